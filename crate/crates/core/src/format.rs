//! Deterministic numeric formatting for human-readable output.

/// Formats with six significant digits, locale-independent, suitable for
/// byte-stable CLI output. CSV paths should use the default `Display`
/// instead, which is the shortest round-trip representation.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (5 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::sig6;

    #[test]
    fn six_significant_digits_across_magnitudes() {
        assert_eq!(sig6(440.29959581649234), "440.300");
        assert_eq!(sig6(266.92755733527486), "266.928");
        assert_eq!(sig6(4.151224373366), "4.15122");
        assert_eq!(sig6(0.1542144224831235), "0.154214");
        assert_eq!(sig6(-3.730477810422143), "-3.73048");
        assert_eq!(sig6(26.2), "26.2000");
        assert_eq!(sig6(0.0), "0.00000");
        assert_eq!(sig6(316.47398843930637), "316.474");
        assert_eq!(sig6(1234567.0), "1234567");
    }
}
