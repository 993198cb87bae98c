//! Reproduction of the three published case studies and seeded Monte
//! Carlo noise sweeps, plus the CSV emitters behind the CLI.
//!
//! All three cases share L = 10 m, F = 100 °C, Ta = 25 °C,
//! h = 10 W·m⁻²·°C⁻¹ and a true contact point at l = 4 m; they differ in
//! the material pair: Fe–Cu (κ_A < κ_B), Ag–Pb (κ_A > κ_B) and Al–Mg
//! (similar conductivities, narrow feasibility interval).

use std::io::{self, Write};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::domain::{BarSetup, FluxMeasurement, InverseSetup, ValidationError};
use crate::elasticity;
use crate::forward::{boundary_flux, TemperatureProfile};
use crate::inverse::{error_bound_exact, estimate_interface, feasibility_interval};
use crate::materials::MaterialDb;

/// One of the three reference case studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    One,
    Two,
    Three,
}

impl Example {
    pub const ALL: [Example; 3] = [Example::One, Example::Two, Example::Three];

    /// Material symbols (A, B) of this case.
    pub fn material_symbols(self) -> (&'static str, &'static str) {
        match self {
            Example::One => ("Fe", "Cu"),
            Example::Two => ("Ag", "Pb"),
            Example::Three => ("Al", "Mg"),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Example::One => 1,
            Example::Two => 2,
            Example::Three => 3,
        }
    }

    /// Forward instance with the true interface at 4 m.
    pub fn setup(self) -> BarSetup {
        let db = MaterialDb::builtin();
        let (a, b) = self.material_symbols();
        BarSetup::new(
            10.0,
            4.0,
            100.0,
            25.0,
            10.0,
            db.get(a).expect("builtin").clone(),
            db.get(b).expect("builtin").clone(),
        )
        .expect("reference setup is valid")
    }

    pub fn inverse_setup(self) -> InverseSetup {
        self.setup()
            .without_interface()
            .expect("reference pairs have distinct conductivities")
    }

    /// The exact measured-flux grid of the published table, including the
    /// non-integer center equal to the true flux printed to 3 decimals.
    pub fn flux_grid(self) -> &'static [f64] {
        match self {
            Example::One => &[
                436.0, 437.0, 438.0, 439.0, 440.299, 441.0, 442.0, 443.0, 444.0, 445.0,
            ],
            Example::Two => &[
                263.0, 264.0, 265.0, 266.0, 266.927, 268.0, 269.0, 270.0, 271.0, 272.0,
            ],
            Example::Three => &[
                470.0, 471.0, 472.0, 473.0, 474.0, 474.475, 476.0, 477.0, 478.0, 479.0,
            ],
        }
    }
}

impl std::fmt::Display for Example {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (a, b) = self.material_symbols();
        write!(f, "example {} ({a}-{b})", self.index())
    }
}

/// One row of a reproduced estimation table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    /// Measured flux q̂, W·m⁻².
    pub q_hat: f64,
    /// Estimated interface l̂, m.
    pub l_hat: f64,
    /// Noise level ε = |q − q̂| for the case's true flux, W·m⁻².
    pub epsilon: f64,
    /// Analytic error bound K, m.
    pub k: f64,
}

/// Recomputes a case's estimation table from the closed forms, using the
/// exact true flux of the forward problem at l = 4 m.
pub fn reproduce_table(example: Example) -> Vec<TableRow> {
    let setup = example.setup();
    let inv = example.inverse_setup();
    let q_true = boundary_flux(&setup);
    example
        .flux_grid()
        .iter()
        .map(|&q_hat| {
            let epsilon = (q_true - q_hat).abs();
            let m = FluxMeasurement::new(q_hat, epsilon).expect("grid fluxes are positive");
            let l_hat = estimate_interface(&inv, &m).expect("grid fluxes are feasible");
            let k = error_bound_exact(&inv, q_true, &m).expect("true flux is feasible");
            TableRow {
                q_hat,
                l_hat,
                epsilon,
                k,
            }
        })
        .collect()
}

/// Half-away-from-zero rounding to 3 decimals, the print precision of the
/// published tables.
pub fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

/// Samples the temperature profile at `n_points` evenly spaced positions
/// plus the interface point inserted exactly once, so the kink is always
/// present in plots regardless of grid resolution.
pub fn emit_profile_data(setup: &BarSetup, n_points: usize) -> Vec<(f64, f64)> {
    assert!(n_points >= 2, "need at least two sample points");
    let length = setup.length();
    let interface = setup.interface();
    let profile = TemperatureProfile::new(setup.clone());

    let step = length / (n_points - 1) as f64;
    let mut xs: Vec<f64> = (0..n_points)
        .map(|i| {
            if i == n_points - 1 {
                length // i · step may overshoot L by an ulp
            } else {
                i as f64 * step
            }
        })
        .collect();
    let insert_at = xs.partition_point(|&x| x <= interface);
    xs.insert(insert_at, interface);

    xs.into_iter()
        .map(|x| {
            let u = profile
                .temperature_at(x)
                .expect("sample grid lies inside the bar");
            (x, u)
        })
        .collect()
}

/// An elasticity curve sample, with the number of grid points omitted
/// because they fell inside the asymptote guard band.
#[derive(Debug, Clone, PartialEq)]
pub struct ElasticitySeries {
    pub points: Vec<(f64, f64)>,
    pub skipped: usize,
}

/// Samples E(q) on [q_m + margin·W, q_M − margin·W], W = q_M − q_m.
pub fn emit_elasticity_data(
    setup: &InverseSetup,
    n_points: usize,
    margin: f64,
) -> ElasticitySeries {
    assert!(n_points >= 2, "need at least two sample points");
    assert!(
        margin > 0.0 && margin < 0.5,
        "margin must lie strictly between 0 and 0.5"
    );
    let interval = feasibility_interval(setup);
    let width = interval.width();
    let lo = interval.q_min() + margin * width;
    let hi = interval.q_max() - margin * width;

    let mut points = Vec::with_capacity(n_points);
    let mut skipped = 0;
    for i in 0..n_points {
        let q = lo + (hi - lo) * i as f64 / (n_points - 1) as f64;
        match elasticity::elasticity(setup, q) {
            Ok(e) => points.push((q, e)),
            Err(_) => skipped += 1,
        }
    }
    ElasticitySeries { points, skipped }
}

/// Noise distribution for the sweep. The measurement model only bounds
/// |q − q̂| by ε; uniform is the maximum-entropy choice on that interval,
/// and a zero-mean Gaussian with σ = ε/2 truncated to [−ε, ε] is offered
/// for robustness studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseModel {
    #[default]
    Uniform,
    TruncatedGaussian,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("all {samples} draws fell outside the feasibility interval")]
    AllSamplesInfeasible { samples: usize },
}

/// Per-draw estimation result; `None` when the draw was infeasible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepEstimate {
    pub l_hat: f64,
    pub abs_error: f64,
    pub k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub q_hat: f64,
    pub estimate: Option<SweepEstimate>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    pub max_abs_error: f64,
    pub max_bound: f64,
    pub bound_violations: usize,
    pub infeasible: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub seed: u64,
    pub samples: usize,
    pub epsilon: f64,
    pub noise_model: NoiseModel,
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

/// Seeded Monte Carlo sweep with uniform noise. See
/// [`noise_sweep_with_model`].
pub fn noise_sweep(
    setup: &BarSetup,
    epsilon: f64,
    samples: usize,
    seed: u64,
) -> Result<SweepResult, SweepError> {
    noise_sweep_with_model(setup, epsilon, samples, seed, NoiseModel::Uniform)
}

/// Draws `samples` noisy measurements q̂_i = q + η_i around the true flux
/// and runs the estimator on each. Every sample gets its own RNG stream
/// derived from `(seed, i)`, so the result is independent of execution
/// order. Infeasible draws are discarded and counted, never clamped —
/// clamping would fabricate boundary estimates.
pub fn noise_sweep_with_model(
    setup: &BarSetup,
    epsilon: f64,
    samples: usize,
    seed: u64,
    noise_model: NoiseModel,
) -> Result<SweepResult, SweepError> {
    assert!(epsilon >= 0.0, "noise level must be non-negative");
    assert!(samples >= 1, "need at least one sample");

    let inv = setup.without_interface()?;
    let q_true = boundary_flux(setup);
    let l_true = setup.interface();
    let interval = feasibility_interval(&inv);

    let mut rows = Vec::with_capacity(samples);
    let mut summary = SweepSummary {
        max_abs_error: 0.0,
        max_bound: 0.0,
        bound_violations: 0,
        infeasible: 0,
    };

    for index in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        let q_hat = q_true + draw_noise(&mut rng, epsilon, noise_model);

        let estimate = if interval.contains(q_hat) {
            let m = FluxMeasurement::new(q_hat, epsilon).expect("feasible draws are positive");
            match estimate_interface(&inv, &m) {
                Ok(l_hat) => {
                    let abs_error = (l_true - l_hat).abs();
                    let k = error_bound_exact(&inv, q_true, &m)
                        .expect("true flux and feasible draw are inside the interval");
                    Some(SweepEstimate {
                        l_hat,
                        abs_error,
                        k,
                    })
                }
                Err(_) => None,
            }
        } else {
            None
        };

        match estimate {
            Some(e) => {
                summary.max_abs_error = summary.max_abs_error.max(e.abs_error);
                summary.max_bound = summary.max_bound.max(e.k);
                if e.abs_error > e.k {
                    summary.bound_violations += 1;
                }
            }
            None => summary.infeasible += 1,
        }
        rows.push(SweepRow {
            index,
            q_hat,
            estimate,
        });
    }

    if summary.infeasible == samples {
        return Err(SweepError::AllSamplesInfeasible { samples });
    }

    Ok(SweepResult {
        seed,
        samples,
        epsilon,
        noise_model,
        rows,
        summary,
    })
}

fn draw_noise(rng: &mut ChaCha8Rng, epsilon: f64, model: NoiseModel) -> f64 {
    if epsilon == 0.0 {
        return 0.0;
    }
    match model {
        NoiseModel::Uniform => rng.random_range(-epsilon..=epsilon),
        NoiseModel::TruncatedGaussian => {
            // Box–Muller, rejecting draws beyond ±ε; σ = ε/2 keeps the
            // acceptance rate above 95 %.
            let sigma = epsilon / 2.0;
            loop {
                let u1: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
                let u2: f64 = rng.random();
                let z = (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
                let x = sigma * z;
                if x.abs() <= epsilon {
                    return x;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// CSV emission. One record per sample or point, `.` decimal, full
// precision via shortest round-trip formatting.

pub fn write_profile_csv<W: Write>(w: &mut W, points: &[(f64, f64)]) -> io::Result<()> {
    writeln!(w, "x,u")?;
    for (x, u) in points {
        writeln!(w, "{x},{u}")?;
    }
    Ok(())
}

pub fn write_elasticity_csv<W: Write>(w: &mut W, series: &ElasticitySeries) -> io::Result<()> {
    writeln!(w, "q,E")?;
    for (q, e) in &series.points {
        writeln!(w, "{q},{e}")?;
    }
    Ok(())
}

pub fn write_table_csv<W: Write>(w: &mut W, rows: &[TableRow]) -> io::Result<()> {
    writeln!(w, "q_hat,l_hat,epsilon,K")?;
    for row in rows {
        writeln!(w, "{},{},{},{}", row.q_hat, row.l_hat, row.epsilon, row.k)?;
    }
    Ok(())
}

pub fn write_sweep_csv<W: Write>(w: &mut W, result: &SweepResult) -> io::Result<()> {
    writeln!(w, "i,q_hat,l_hat,abs_error,K,feasible")?;
    for row in &result.rows {
        match row.estimate {
            Some(e) => writeln!(
                w,
                "{},{},{},{},{},true",
                row.index, row.q_hat, e.l_hat, e.abs_error, e.k
            )?,
            None => writeln!(w, "{},{},,,,false", row.index, row.q_hat)?,
        }
    }
    Ok(())
}
