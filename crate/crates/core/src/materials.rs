//! Built-in material database and ingestion of user-supplied CSV files.
//!
//! The file format is UTF-8 CSV with the mandatory header
//! `name,symbol,kappa`, comma separator, `.` decimal point and no quoting
//! (names must not contain commas). `\n` and `\r\n` line endings are both
//! accepted; a trailing newline is optional. User entries shadow builtins
//! with the same symbol — conductivity tables list average values, and
//! locally measured ones should win.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::domain::Material;

pub const CSV_HEADER: &str = "name,symbol,kappa";

#[derive(Debug, Error)]
pub enum MaterialsError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("missing or malformed header: expected `{CSV_HEADER}` on line 1")]
    MissingHeader,
    #[error("{message} (line {line})")]
    Parse { line: usize, message: String },
    #[error("kappa must be positive (line {line})")]
    NonPositiveKappa { line: usize, value: f64 },
    #[error("duplicate symbol '{symbol}' (line {line})")]
    DuplicateSymbol { symbol: String, line: usize },
    #[error("unknown material symbol '{symbol}'")]
    UnknownMaterial { symbol: String },
}

/// An ordered, symbol-keyed collection of materials. Symbols are unique
/// and case-sensitive.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialDb {
    entries: Vec<Material>,
}

impl MaterialDb {
    /// The six built-in average conductivities, W·m⁻¹·°C⁻¹.
    pub fn builtin() -> Self {
        let entry = |name: &str, symbol: &str, kappa: f64| {
            Material::new(name, symbol, kappa).expect("builtin materials are valid")
        };
        Self {
            entries: vec![
                entry("Aluminium", "Al", 204.0),
                entry("Copper", "Cu", 386.0),
                entry("Iron", "Fe", 73.0),
                entry("Silver", "Ag", 419.0),
                entry("Lead", "Pb", 35.0),
                entry("Magnesium", "Mg", 156.0),
            ],
        }
    }

    /// Loads a CSV file and merges it over the builtins: entries whose
    /// symbol matches a builtin replace it in place, new symbols are
    /// appended in file order.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, MaterialsError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| MaterialsError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut db = Self::builtin();
        db.merge_csv(&text)?;
        Ok(db)
    }

    /// Parses CSV text and merges it into this database. Duplicates are
    /// rejected within the file but shadow existing entries.
    pub fn merge_csv(&mut self, text: &str) -> Result<(), MaterialsError> {
        let mut lines = text.lines();
        match lines.next() {
            Some(header) if header == CSV_HEADER => {}
            _ => return Err(MaterialsError::MissingHeader),
        }

        let mut seen_in_file: Vec<String> = Vec::new();
        for (idx, line) in lines.enumerate() {
            let line_no = idx + 2; // 1-based, after the header
            let parse = |message: String| MaterialsError::Parse {
                line: line_no,
                message,
            };

            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(parse(format!(
                    "expected 3 comma-separated fields, got {}",
                    fields.len()
                )));
            }
            let (name, symbol, kappa_text) = (fields[0], fields[1], fields[2]);
            if name.is_empty() {
                return Err(parse("name must be non-empty".to_string()));
            }
            if symbol.is_empty() {
                return Err(parse("symbol must be non-empty".to_string()));
            }
            let kappa: f64 = kappa_text
                .parse()
                .map_err(|_| parse(format!("invalid kappa value '{kappa_text}'")))?;
            if !kappa.is_finite() {
                return Err(parse(format!("invalid kappa value '{kappa_text}'")));
            }
            if kappa <= 0.0 {
                return Err(MaterialsError::NonPositiveKappa {
                    line: line_no,
                    value: kappa,
                });
            }
            if seen_in_file.iter().any(|s| s == symbol) {
                return Err(MaterialsError::DuplicateSymbol {
                    symbol: symbol.to_string(),
                    line: line_no,
                });
            }
            seen_in_file.push(symbol.to_string());

            let material = Material::new(name, symbol, kappa).expect("fields checked above");
            match self.entries.iter_mut().find(|m| m.symbol() == symbol) {
                Some(existing) => *existing = material,
                None => self.entries.push(material),
            }
        }
        Ok(())
    }

    /// Case-sensitive lookup by symbol.
    pub fn get(&self, symbol: &str) -> Option<&Material> {
        self.entries.iter().find(|m| m.symbol() == symbol)
    }

    /// Lookup that reports the missing symbol as an error.
    pub fn lookup(&self, symbol: &str) -> Result<&Material, MaterialsError> {
        self.get(symbol)
            .ok_or_else(|| MaterialsError::UnknownMaterial {
                symbol: symbol.to_string(),
            })
    }

    pub fn iter(&self) -> impl Iterator<Item = &Material> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Renders the database back to the CSV format, full precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for m in &self.entries {
            let _ = writeln!(out, "{},{},{}", m.name(), m.symbol(), m.kappa());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_values() {
        let db = MaterialDb::builtin();
        assert_eq!(db.len(), 6);
        assert_eq!(db.get("Cu").unwrap().kappa(), 386.0);
        assert_eq!(db.get("Pb").unwrap().kappa(), 35.0);
        assert_eq!(db.get("Al").unwrap().kappa(), 204.0);
        assert_eq!(db.get("Fe").unwrap().kappa(), 73.0);
        assert_eq!(db.get("Ag").unwrap().kappa(), 419.0);
        assert_eq!(db.get("Mg").unwrap().kappa(), 156.0);
        assert!(db.get("Au").is_none());
        assert!(matches!(
            db.lookup("Au"),
            Err(MaterialsError::UnknownMaterial { .. })
        ));
        // Case-sensitive.
        assert!(db.get("cu").is_none());
    }

    #[test]
    fn merges_new_entries_over_builtins() {
        let mut db = MaterialDb::builtin();
        db.merge_csv("name,symbol,kappa\nGold,Au,315\n").unwrap();
        assert_eq!(db.len(), 7);
        assert_eq!(db.get("Au").unwrap().kappa(), 315.0);
        assert_eq!(db.get("Au").unwrap().name(), "Gold");
        // Untouched builtins keep their values.
        assert_eq!(db.get("Cu").unwrap().kappa(), 386.0);
    }

    #[test]
    fn shadowing_replaces_in_place() {
        let mut db = MaterialDb::builtin();
        db.merge_csv("name,symbol,kappa\nCopper,Cu,401\n").unwrap();
        assert_eq!(db.len(), 6);
        assert_eq!(db.get("Cu").unwrap().kappa(), 401.0);
        // Position preserved: Cu is still the second entry.
        assert_eq!(db.iter().nth(1).unwrap().symbol(), "Cu");
    }

    #[test]
    fn rejects_malformed_input() {
        let mut db = MaterialDb::builtin();
        assert!(matches!(
            db.merge_csv("nome,symbol,kappa\n"),
            Err(MaterialsError::MissingHeader)
        ));
        assert!(matches!(
            db.merge_csv(""),
            Err(MaterialsError::MissingHeader)
        ));
        let err = db.merge_csv("name,symbol,kappa\nBad,Xx,-5\n").unwrap_err();
        assert_eq!(err.to_string(), "kappa must be positive (line 2)");
        let err = db
            .merge_csv("name,symbol,kappa\nGold,Au,315\nGold2,Au,320\n")
            .unwrap_err();
        assert!(matches!(
            err,
            MaterialsError::DuplicateSymbol { line: 3, .. }
        ));
        let err = db.merge_csv("name,symbol,kappa\nGold,Au\n").unwrap_err();
        assert!(matches!(err, MaterialsError::Parse { line: 2, .. }));
        let err = db
            .merge_csv("name,symbol,kappa\nGold,Au,not-a-number\n")
            .unwrap_err();
        assert!(matches!(err, MaterialsError::Parse { line: 2, .. }));
        assert!(db.merge_csv("name,symbol,kappa\nGold,Au,inf\n").is_err());
    }

    #[test]
    fn crlf_and_missing_trailing_newline_are_accepted() {
        let mut db = MaterialDb::builtin();
        db.merge_csv("name,symbol,kappa\r\nGold,Au,315\r\nTin,Sn,67")
            .unwrap();
        assert_eq!(db.get("Au").unwrap().kappa(), 315.0);
        assert_eq!(db.get("Sn").unwrap().kappa(), 67.0);
    }

    #[test]
    fn load_from_file() {
        let dir = std::env::temp_dir().join("thermiface-materials-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("user.csv");
        std::fs::write(&path, "name,symbol,kappa\nGold,Au,315\n").unwrap();
        let db = MaterialDb::load(&path).unwrap();
        assert_eq!(db.len(), 7);
        assert_eq!(db.get("Au").unwrap().kappa(), 315.0);
        // Builtins not shadowed by the file keep their exact values.
        for (symbol, kappa) in [
            ("Al", 204.0),
            ("Cu", 386.0),
            ("Fe", 73.0),
            ("Ag", 419.0),
            ("Pb", 35.0),
            ("Mg", 156.0),
        ] {
            assert_eq!(db.get(symbol).unwrap().kappa(), kappa);
        }

        let missing = dir.join("does-not-exist.csv");
        assert!(matches!(
            MaterialDb::load(&missing),
            Err(MaterialsError::Io { .. })
        ));
    }

    #[test]
    fn round_trips_through_csv() {
        let mut db = MaterialDb::builtin();
        db.merge_csv("name,symbol,kappa\nGold,Au,315.5\n").unwrap();
        let text = db.to_csv();
        let mut db2 = MaterialDb::builtin();
        db2.merge_csv(&text).unwrap();
        assert_eq!(db, db2);
    }
}
