//! Interface-location estimation from a single boundary-flux measurement,
//! with feasibility conditions and analytic error bounds.
//!
//! Inverting the closed-form flux for the contact point gives
//!
//! ```text
//! l̂ = κ_A·κ_B/(κ_B − κ_A) · [ (F − Ta)/q̂ − 1/h − L/κ_B ]
//! ```
//!
//! which lands strictly inside the bar exactly when the measured flux lies
//! strictly inside the open interval (q_m, q_M) determined by the smaller
//! and larger conductivity. The estimation error obeys the exact identity
//!
//! ```text
//! |l − l̂| = κ_A·κ_B/|κ_B − κ_A| · (F − Ta)/(q·q̂) · |q − q̂|
//! ```
//!
//! so a noise level ε bounding |q − q̂| yields an analytic error bound.

use thiserror::Error;

use crate::domain::{FluxMeasurement, InverseSetup};
use crate::elasticity;

/// Errors of the inversion and of elasticity evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InverseError {
    #[error("measured flux {q_hat} W·m⁻² is outside the feasible open interval {interval} W·m⁻²")]
    InfeasibleMeasurement {
        q_hat: f64,
        interval: FeasibilityInterval,
    },
    #[error(
        "noise level {epsilon} W·m⁻² around q̂ = {q_hat} W·m⁻² spans the whole feasible \
         interval {interval} W·m⁻²"
    )]
    NoiseSwampsSignal {
        q_hat: f64,
        epsilon: f64,
        interval: FeasibilityInterval,
    },
    #[error("flux {q} W·m⁻² is at the elasticity asymptote {asymptote} W·m⁻²")]
    AtAsymptote { q: f64, asymptote: f64 },
}

/// The open flux interval (q_m, q_M) on which the inversion yields a
/// strictly interior contact point. Both endpoints are excluded: a flux on
/// the boundary would place the interface on an end of the bar, i.e. no
/// interface at all.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityInterval {
    q_min: f64,
    q_max: f64,
}

impl FeasibilityInterval {
    /// Lower endpoint q_m, W·m⁻² (excluded).
    pub fn q_min(&self) -> f64 {
        self.q_min
    }

    /// Upper endpoint q_M, W·m⁻² (excluded).
    pub fn q_max(&self) -> f64 {
        self.q_max
    }

    pub fn width(&self) -> f64 {
        self.q_max - self.q_min
    }

    /// Strict containment test.
    pub fn contains(&self, q: f64) -> bool {
        q > self.q_min && q < self.q_max
    }
}

impl std::fmt::Display for FeasibilityInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {})",
            crate::format::sig6(self.q_min),
            crate::format::sig6(self.q_max)
        )
    }
}

/// Everything the caller needs to judge one estimate: the estimate itself,
/// the measurement it came from, the feasibility interval, the worst-case
/// error bound over the admissible true-flux range, and the local
/// elasticity of the estimate with respect to the measured flux.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub l_hat: f64,
    pub measurement: FluxMeasurement,
    pub interval: FeasibilityInterval,
    pub error_bound_practical: f64,
    pub elasticity_at_measurement: f64,
}

/// Computes (q_m, q_M) from L, h, F − Ta and the two conductivities:
/// q_* = κ_*·h·(F − Ta)/(L·h + κ_*) for κ_m = min(κ_A, κ_B) and
/// κ_M = max(κ_A, κ_B).
pub fn feasibility_interval(setup: &InverseSetup) -> FeasibilityInterval {
    let kappa_min = setup.kappa_a().min(setup.kappa_b());
    let kappa_max = setup.kappa_a().max(setup.kappa_b());
    FeasibilityInterval {
        q_min: endpoint_flux(setup, kappa_min),
        q_max: endpoint_flux(setup, kappa_max),
    }
}

fn endpoint_flux(setup: &InverseSetup, kappa: f64) -> f64 {
    let h = setup.convection_coeff();
    kappa * h * (setup.source_temp() - setup.ambient_temp()) / (setup.length() * h + kappa)
}

/// Estimates the contact point from the measured flux.
///
/// Requires q̂ strictly inside the feasibility interval; the resulting
/// estimate satisfies 0 < l̂ < L. A measurement exactly on (or rounding
/// onto) an endpoint is rejected as infeasible rather than clamped.
pub fn estimate_interface(
    setup: &InverseSetup,
    measurement: &FluxMeasurement,
) -> Result<f64, InverseError> {
    let interval = feasibility_interval(setup);
    let q_hat = measurement.q_hat();
    if !interval.contains(q_hat) {
        return Err(InverseError::InfeasibleMeasurement { q_hat, interval });
    }
    let l_hat = invert_flux(setup, q_hat);
    // Floating-point rounding can push an estimate from a measurement a few
    // ulps inside the interval onto the bar ends; treat that as infeasible.
    if !(l_hat > 0.0 && l_hat < setup.length()) {
        return Err(InverseError::InfeasibleMeasurement { q_hat, interval });
    }
    Ok(l_hat)
}

/// The raw inversion formula, without feasibility checks.
fn invert_flux(setup: &InverseSetup, q: f64) -> f64 {
    let kappa_a = setup.kappa_a();
    let kappa_b = setup.kappa_b();
    let gain = kappa_a * kappa_b / (kappa_b - kappa_a);
    let delta = setup.source_temp() - setup.ambient_temp();
    gain * (delta / q - 1.0 / setup.convection_coeff() - setup.length() / kappa_b)
}

/// Error bound when the true flux is known (validation studies):
///
/// ```text
/// K = κ_A·κ_B/|κ_B − κ_A| · (F − Ta)/(q·q̂) · ε
/// ```
///
/// Guarantees |l − l̂| ≤ K whenever |q − q̂| ≤ ε.
pub fn error_bound_exact(
    setup: &InverseSetup,
    q_true: f64,
    measurement: &FluxMeasurement,
) -> Result<f64, InverseError> {
    let interval = feasibility_interval(setup);
    for q in [q_true, measurement.q_hat()] {
        if !interval.contains(q) {
            return Err(InverseError::InfeasibleMeasurement { q_hat: q, interval });
        }
    }
    Ok(bound_kernel(setup, q_true, measurement.q_hat()) * measurement.epsilon())
}

/// Error bound when only the measurement is available: the exact bound
/// maximized over the admissible true-flux interval
/// [q̂ − ε, q̂ + ε] ∩ (q_m, q_M), i.e. with q replaced by its worst
/// (smallest) admissible value max(q̂ − ε, q_m).
///
/// Always ≥ the exact bound for consistent inputs; zero iff ε = 0.
pub fn error_bound_practical(
    setup: &InverseSetup,
    measurement: &FluxMeasurement,
) -> Result<f64, InverseError> {
    let interval = feasibility_interval(setup);
    let q_hat = measurement.q_hat();
    let epsilon = measurement.epsilon();
    if !interval.contains(q_hat) {
        return Err(InverseError::InfeasibleMeasurement { q_hat, interval });
    }
    if q_hat - epsilon <= interval.q_min() && q_hat + epsilon >= interval.q_max() {
        return Err(InverseError::NoiseSwampsSignal {
            q_hat,
            epsilon,
            interval,
        });
    }
    let q_worst = (q_hat - epsilon).max(interval.q_min());
    Ok(bound_kernel(setup, q_worst, q_hat) * epsilon)
}

fn bound_kernel(setup: &InverseSetup, q: f64, q_hat: f64) -> f64 {
    let kappa_a = setup.kappa_a();
    let kappa_b = setup.kappa_b();
    let gain = (kappa_a * kappa_b / (kappa_b - kappa_a)).abs();
    gain * (setup.source_temp() - setup.ambient_temp()) / (q * q_hat)
}

/// Runs the full estimation pipeline for one measurement: estimate,
/// feasibility interval, worst-case error bound and local elasticity,
/// the latter evaluated at the measured flux since the true flux is
/// unknown in practice.
pub fn estimate_report(
    setup: &InverseSetup,
    measurement: &FluxMeasurement,
) -> Result<EstimateReport, InverseError> {
    let l_hat = estimate_interface(setup, measurement)?;
    let interval = feasibility_interval(setup);
    let bound = error_bound_practical(setup, measurement)?;
    let elasticity_at_measurement = elasticity::elasticity(setup, measurement.q_hat())?;
    Ok(EstimateReport {
        l_hat,
        measurement: *measurement,
        interval,
        error_bound_practical: bound,
        elasticity_at_measurement,
    })
}
