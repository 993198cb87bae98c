//! `thermiface` — forward solves, flux prediction, interface estimation,
//! feasibility checks, elasticity curves, reference-table reproduction and
//! seeded noise sweeps for the two-material insulated bar.
//!
//! Every subcommand is a thin mapping onto one library operation; no
//! numerics live here. Exit codes: 0 success, 2 validation or parse
//! error, 3 infeasible measurement, 4 I/O error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use thermiface::domain::{BarSetup, FluxMeasurement, InverseSetup, Material, ValidationError};
use thermiface::elasticity;
use thermiface::experiments::{
    self, emit_elasticity_data, emit_profile_data, noise_sweep_with_model, reproduce_table,
    Example, NoiseModel, SweepError,
};
use thermiface::format::sig6;
use thermiface::forward::boundary_flux;
use thermiface::inverse::{estimate_report, feasibility_interval, InverseError};
use thermiface::materials::{MaterialDb, MaterialsError};

#[derive(Parser)]
#[command(
    name = "thermiface",
    version,
    about = "Two-material bar heat transfer and contact-point estimation from a boundary flux"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the analytic temperature profile
    Forward(ForwardArgs),
    /// Predict the boundary heat flux at x = L
    Flux(FluxArgs),
    /// Estimate the interface location from a measured flux
    Estimate(EstimateArgs),
    /// Print the feasible flux interval (q_m, q_M)
    Feasibility(FeasibilityArgs),
    /// Evaluate the elasticity at one flux, or sample the whole curve
    Elasticity(ElasticityArgs),
    /// Reproduce the reference estimation tables
    Tables(TablesArgs),
    /// Seeded Monte Carlo sweep over noisy measurements
    Sweep(SweepArgs),
    /// List the material database
    Materials(MaterialsArgs),
}

/// Shared problem parameters. Defaults mirror the reference case studies,
/// so reproducing them needs only the material pair.
#[derive(Args)]
struct ProblemArgs {
    /// Bar length L, m
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    length: f64,
    /// Source temperature F at x = 0, °C
    #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
    source_temp: f64,
    /// Ambient temperature Ta, °C
    #[arg(long, default_value_t = 25.0, allow_negative_numbers = true)]
    ambient_temp: f64,
    /// Convection coefficient h at x = L, W·m⁻²·°C⁻¹
    #[arg(long = "h", default_value_t = 10.0, allow_negative_numbers = true)]
    convection: f64,
}

#[derive(Args)]
struct MaterialArgs {
    /// Symbol of the material on [0, l], resolved via the database
    #[arg(long, conflicts_with = "kappa_a")]
    material_a: Option<String>,
    /// Explicit conductivity for the material on [0, l], W·m⁻¹·°C⁻¹
    #[arg(long, allow_negative_numbers = true)]
    kappa_a: Option<f64>,
    /// Symbol of the material on [l, L], resolved via the database
    #[arg(long, conflicts_with = "kappa_b")]
    material_b: Option<String>,
    /// Explicit conductivity for the material on [l, L], W·m⁻¹·°C⁻¹
    #[arg(long, allow_negative_numbers = true)]
    kappa_b: Option<f64>,
    /// Materials CSV merged over the builtins (header `name,symbol,kappa`)
    #[arg(long, env = "THERMIFACE_MATERIALS", value_name = "PATH")]
    materials_file: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Write to a file instead of stdout
    #[arg(long, short, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Aligned text, six significant digits
    Human,
    /// Full-precision CSV
    Csv,
}

#[derive(Args)]
struct ForwardArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    materials: MaterialArgs,
    /// Interface position l, m
    #[arg(long, allow_negative_numbers = true)]
    interface: f64,
    /// Number of evenly spaced samples (the interface point is added)
    #[arg(long, default_value_t = 101)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct FluxArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    materials: MaterialArgs,
    /// Interface position l, m
    #[arg(long, allow_negative_numbers = true)]
    interface: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    materials: MaterialArgs,
    /// Measured boundary flux q̂, W·m⁻²
    #[arg(long, allow_negative_numbers = true)]
    flux: f64,
    /// Instrument noise level ε bounding |q − q̂|, W·m⁻²
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    noise: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct FeasibilityArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    materials: MaterialArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ElasticityArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    materials: MaterialArgs,
    /// Evaluate E at this flux; omit to sample the whole curve
    #[arg(long, allow_negative_numbers = true)]
    flux: Option<f64>,
    /// Curve samples
    #[arg(long, default_value_t = 101)]
    points: usize,
    /// Fraction of the interval width clipped off each end of the curve
    #[arg(long, default_value_t = 0.05)]
    margin: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct TablesArgs {
    /// Which table to reproduce: 1, 2, 3 or all
    #[arg(default_value = "all")]
    which: String,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    materials: MaterialArgs,
    /// True interface position l, m
    #[arg(long, allow_negative_numbers = true)]
    interface: f64,
    /// Noise level ε, W·m⁻²
    #[arg(long, allow_negative_numbers = true)]
    noise: f64,
    /// Number of noisy draws
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// RNG seed; each sample uses the stream (seed, index)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Noise distribution on [−ε, ε]
    #[arg(long, value_enum, default_value_t = NoiseModelArg::Uniform)]
    noise_model: NoiseModelArg,
    /// Human mode prints the summary; CSV mode emits every draw
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NoiseModelArg {
    Uniform,
    Gaussian,
}

impl From<NoiseModelArg> for NoiseModel {
    fn from(value: NoiseModelArg) -> Self {
        match value {
            NoiseModelArg::Uniform => NoiseModel::Uniform,
            NoiseModelArg::Gaussian => NoiseModel::TruncatedGaussian,
        }
    }
}

#[derive(Args)]
struct MaterialsArgs {
    /// Materials CSV merged over the builtins
    #[arg(long, env = "THERMIFACE_MATERIALS", value_name = "PATH")]
    materials_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

enum CliError {
    Usage(String),
    Infeasible(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Infeasible(m) | CliError::Io(m) => m,
        }
    }
}

impl From<ValidationError> for CliError {
    fn from(e: ValidationError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<InverseError> for CliError {
    fn from(e: InverseError) -> Self {
        CliError::Infeasible(e.to_string())
    }
}

impl From<MaterialsError> for CliError {
    fn from(e: MaterialsError) -> Self {
        match e {
            MaterialsError::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Validation(v) => v.into(),
            SweepError::AllSamplesInfeasible { .. } => CliError::Infeasible(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Forward(args) => forward_cmd(args),
        Command::Flux(args) => flux_cmd(args),
        Command::Estimate(args) => estimate_cmd(args),
        Command::Feasibility(args) => feasibility_cmd(args),
        Command::Elasticity(args) => elasticity_cmd(args),
        Command::Tables(args) => tables_cmd(args),
        Command::Sweep(args) => sweep_cmd(args),
        Command::Materials(args) => materials_cmd(args),
    }
}

fn load_db(materials_file: Option<&PathBuf>) -> Result<MaterialDb, CliError> {
    match materials_file {
        Some(path) => Ok(MaterialDb::load(path)?),
        None => Ok(MaterialDb::builtin()),
    }
}

fn resolve_materials(args: &MaterialArgs) -> Result<(Material, Material), CliError> {
    let db = load_db(args.materials_file.as_ref())?;
    let resolve =
        |symbol: &Option<String>, kappa: &Option<f64>, side: char| -> Result<Material, CliError> {
            match (symbol, kappa) {
                (Some(s), None) => Ok(db.lookup(s)?.clone()),
                (None, Some(k)) => {
                    let tag = format!("custom-{side}");
                    Ok(Material::new(tag.clone(), tag, *k)?)
                }
                (None, None) => Err(CliError::Usage(format!(
                "material {side} missing: pass --material-{side} <SYMBOL> or --kappa-{side} <VALUE>"
            ))),
                (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
            }
        };
    Ok((
        resolve(&args.material_a, &args.kappa_a, 'a')?,
        resolve(&args.material_b, &args.kappa_b, 'b')?,
    ))
}

fn bar_setup(
    problem: &ProblemArgs,
    materials: &MaterialArgs,
    interface: f64,
) -> Result<BarSetup, CliError> {
    let (a, b) = resolve_materials(materials)?;
    Ok(BarSetup::new(
        problem.length,
        interface,
        problem.source_temp,
        problem.ambient_temp,
        problem.convection,
        a,
        b,
    )?)
}

fn inverse_setup(
    problem: &ProblemArgs,
    materials: &MaterialArgs,
) -> Result<InverseSetup, CliError> {
    let (a, b) = resolve_materials(materials)?;
    Ok(InverseSetup::new(
        problem.length,
        problem.source_temp,
        problem.ambient_temp,
        problem.convection,
        a,
        b,
    )?)
}

fn writer(out: &OutputArgs) -> Result<Box<dyn Write>, CliError> {
    match &out.output {
        Some(path) => Ok(Box::new(BufWriter::new(File::create(path)?))),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn forward_cmd(args: ForwardArgs) -> Result<(), CliError> {
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let setup = bar_setup(&args.problem, &args.materials, args.interface)?;
    let points = emit_profile_data(&setup, args.points);
    let mut w = writer(&args.out)?;
    match args.format {
        Format::Csv => experiments::write_profile_csv(&mut w, &points)?,
        Format::Human => {
            writeln!(w, "{:>12}  {:>12}", "x [m]", "u [°C]")?;
            for (x, u) in &points {
                writeln!(w, "{:>12}  {:>12}", sig6(*x), sig6(*u))?;
            }
        }
    }
    Ok(())
}

fn flux_cmd(args: FluxArgs) -> Result<(), CliError> {
    let setup = bar_setup(&args.problem, &args.materials, args.interface)?;
    let mut w = writer(&args.out)?;
    writeln!(w, "{}", sig6(boundary_flux(&setup)))?;
    Ok(())
}

fn estimate_cmd(args: EstimateArgs) -> Result<(), CliError> {
    let setup = inverse_setup(&args.problem, &args.materials)?;
    let measurement = FluxMeasurement::new(args.flux, args.noise)?;
    let report = estimate_report(&setup, &measurement)?;
    let mut w = writer(&args.out)?;
    writeln!(w, "l_hat = {} m", sig6(report.l_hat))?;
    writeln!(w, "flux = {} W·m⁻²", sig6(measurement.q_hat()))?;
    writeln!(w, "noise = {} W·m⁻²", sig6(measurement.epsilon()))?;
    writeln!(w, "feasibility_interval = {} W·m⁻²", report.interval)?;
    writeln!(w, "error_bound = {} m", sig6(report.error_bound_practical))?;
    writeln!(
        w,
        "elasticity_at_measurement = {}",
        sig6(report.elasticity_at_measurement)
    )?;
    Ok(())
}

fn feasibility_cmd(args: FeasibilityArgs) -> Result<(), CliError> {
    let setup = inverse_setup(&args.problem, &args.materials)?;
    let interval = feasibility_interval(&setup);
    let mut w = writer(&args.out)?;
    writeln!(w, "q_m = {} W·m⁻²", sig6(interval.q_min()))?;
    writeln!(w, "q_M = {} W·m⁻²", sig6(interval.q_max()))?;
    Ok(())
}

fn elasticity_cmd(args: ElasticityArgs) -> Result<(), CliError> {
    let setup = inverse_setup(&args.problem, &args.materials)?;
    let mut w = writer(&args.out)?;
    match args.flux {
        Some(q) => {
            let e = elasticity::elasticity(&setup, q)?;
            writeln!(w, "E = {}", sig6(e))?;
        }
        None => {
            if args.points < 2 {
                return Err(CliError::Usage("--points must be at least 2".into()));
            }
            if !(args.margin > 0.0 && args.margin < 0.5) {
                return Err(CliError::Usage(
                    "--margin must lie strictly between 0 and 0.5".into(),
                ));
            }
            let series = emit_elasticity_data(&setup, args.points, args.margin);
            match args.format {
                Format::Csv => experiments::write_elasticity_csv(&mut w, &series)?,
                Format::Human => {
                    writeln!(w, "{:>12}  {:>12}", "q [W·m⁻²]", "E")?;
                    for (q, e) in &series.points {
                        writeln!(w, "{:>12}  {:>12}", sig6(*q), sig6(*e))?;
                    }
                }
            }
            if series.skipped > 0 {
                eprintln!(
                    "note: {} sample(s) skipped next to the asymptote",
                    series.skipped
                );
            }
        }
    }
    Ok(())
}

fn tables_cmd(args: TablesArgs) -> Result<(), CliError> {
    let examples: Vec<Example> = match args.which.as_str() {
        "all" => Example::ALL.to_vec(),
        "1" => vec![Example::One],
        "2" => vec![Example::Two],
        "3" => vec![Example::Three],
        other => {
            return Err(CliError::Usage(format!(
                "unknown table '{other}': expected 1, 2, 3 or all"
            )))
        }
    };
    let mut w = writer(&args.out)?;
    for example in examples {
        writeln!(w, "# {example}")?;
        let rows = reproduce_table(example);
        match args.format {
            Format::Csv => experiments::write_table_csv(&mut w, &rows)?,
            Format::Human => {
                writeln!(
                    w,
                    "{:>12}  {:>12}  {:>12}  {:>12}",
                    "q_hat", "l_hat", "epsilon", "K"
                )?;
                for row in &rows {
                    writeln!(
                        w,
                        "{:>12}  {:>12}  {:>12}  {:>12}",
                        sig6(row.q_hat),
                        sig6(row.l_hat),
                        sig6(row.epsilon),
                        sig6(row.k)
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn sweep_cmd(args: SweepArgs) -> Result<(), CliError> {
    if args.samples < 1 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if args.noise < 0.0 {
        return Err(CliError::Usage("--noise must be non-negative".into()));
    }
    let setup = bar_setup(&args.problem, &args.materials, args.interface)?;
    let result = noise_sweep_with_model(
        &setup,
        args.noise,
        args.samples,
        args.seed,
        args.noise_model.into(),
    )?;
    let mut w = writer(&args.out)?;
    match args.format {
        Format::Csv => experiments::write_sweep_csv(&mut w, &result)?,
        Format::Human => {
            writeln!(w, "samples = {}", result.samples)?;
            writeln!(w, "seed = {}", result.seed)?;
            writeln!(w, "noise = {} W·m⁻²", sig6(result.epsilon))?;
            writeln!(
                w,
                "feasible = {}",
                result.samples - result.summary.infeasible
            )?;
            writeln!(w, "infeasible = {}", result.summary.infeasible)?;
            writeln!(
                w,
                "max_abs_error = {} m",
                sig6(result.summary.max_abs_error)
            )?;
            writeln!(w, "max_error_bound = {} m", sig6(result.summary.max_bound))?;
            writeln!(w, "bound_violations = {}", result.summary.bound_violations)?;
        }
    }
    Ok(())
}

fn materials_cmd(args: MaterialsArgs) -> Result<(), CliError> {
    let db = load_db(args.materials_file.as_ref())?;
    let mut w = writer(&args.out)?;
    match args.format {
        Format::Csv => write!(w, "{}", db.to_csv())?,
        Format::Human => {
            writeln!(w, "{:<8}  {:<12}  {:>12}", "symbol", "name", "kappa")?;
            for m in db.iter() {
                writeln!(
                    w,
                    "{:<8}  {:<12}  {:>12}",
                    m.symbol(),
                    m.name(),
                    sig6(m.kappa())
                )?;
            }
        }
    }
    Ok(())
}
