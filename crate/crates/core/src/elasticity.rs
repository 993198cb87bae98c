//! Local influence of the flux datum on the estimate.
//!
//! The elasticity of the estimated contact point with respect to the flux,
//! E(q) = (q/l)·∂l/∂q, reduces to the closed form
//!
//! ```text
//! E(q) = (F − Ta)·h·κ_B / [ q·(κ_B + L·h) − h·κ_B·(F − Ta) ]
//! ```
//!
//! read as "percent change in l̂ per 1 % change in q̂". It has a vertical
//! asymptote at q = h·κ_B·(F − Ta)/(κ_B + L·h), which is the feasibility
//! endpoint contributed by material B: q_M when κ_A < κ_B, q_m when
//! κ_A > κ_B. On the feasible interval the function is negative in the
//! first case, positive in the second, and strictly decreasing in both.

use crate::domain::InverseSetup;
use crate::inverse::{feasibility_interval, InverseError};

/// Denominator cutoff, relative to the numerator, below which a flux is
/// reported as sitting on the asymptote instead of producing an
/// astronomically large elasticity.
const ASYMPTOTE_GUARD: f64 = 1e-12;

/// Sign of the elasticity function on the whole feasible interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElasticitySign {
    /// κ_A < κ_B: overestimating the flux underestimates the interface.
    Negative,
    /// κ_A > κ_B.
    Positive,
}

impl std::fmt::Display for ElasticitySign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ElasticitySign::Negative => write!(f, "negative"),
            ElasticitySign::Positive => write!(f, "positive"),
        }
    }
}

/// Qualitative summary of the elasticity function for one setup.
#[derive(Debug, Clone, PartialEq)]
pub struct ElasticityProfile {
    pub setup: InverseSetup,
    pub asymptote_q: f64,
    pub sign_on_feasible_interval: ElasticitySign,
}

impl ElasticityProfile {
    pub fn of(setup: &InverseSetup) -> Self {
        Self {
            setup: setup.clone(),
            asymptote_q: asymptote_location(setup),
            sign_on_feasible_interval: classify_sign(setup),
        }
    }
}

/// E(q) for a flux strictly inside the feasibility interval.
pub fn elasticity(setup: &InverseSetup, q: f64) -> Result<f64, InverseError> {
    let interval = feasibility_interval(setup);
    if !interval.contains(q) {
        return Err(InverseError::InfeasibleMeasurement { q_hat: q, interval });
    }
    let (numerator, denominator) = parts(setup, q);
    if denominator.abs() < ASYMPTOTE_GUARD * numerator.abs() {
        return Err(InverseError::AtAsymptote {
            q,
            asymptote: asymptote_location(setup),
        });
    }
    Ok(numerator / denominator)
}

/// ∂E/∂q, strictly negative wherever E is defined:
///
/// ```text
/// ∂E/∂q = −(F − Ta)·h·κ_B·(κ_B + L·h) / [ q·(κ_B + L·h) − h·κ_B·(F − Ta) ]²
/// ```
pub fn elasticity_derivative(setup: &InverseSetup, q: f64) -> Result<f64, InverseError> {
    let interval = feasibility_interval(setup);
    if !interval.contains(q) {
        return Err(InverseError::InfeasibleMeasurement { q_hat: q, interval });
    }
    let (numerator, denominator) = parts(setup, q);
    if denominator.abs() < ASYMPTOTE_GUARD * numerator.abs() {
        return Err(InverseError::AtAsymptote {
            q,
            asymptote: asymptote_location(setup),
        });
    }
    let scale = setup.kappa_b() + setup.length() * setup.convection_coeff();
    Ok(-numerator * scale / (denominator * denominator))
}

/// Location of the vertical asymptote, h·κ_B·(F − Ta)/(κ_B + L·h).
pub fn asymptote_location(setup: &InverseSetup) -> f64 {
    let h = setup.convection_coeff();
    let kappa_b = setup.kappa_b();
    let delta = setup.source_temp() - setup.ambient_temp();
    h * kappa_b * delta / (kappa_b + setup.length() * h)
}

/// Sign of E on the feasible interval, fixed by the conductivity ordering.
/// Equal conductivities cannot occur: `InverseSetup` rejects them.
pub fn classify_sign(setup: &InverseSetup) -> ElasticitySign {
    if setup.kappa_a() < setup.kappa_b() {
        ElasticitySign::Negative
    } else {
        ElasticitySign::Positive
    }
}

fn parts(setup: &InverseSetup, q: f64) -> (f64, f64) {
    let h = setup.convection_coeff();
    let kappa_b = setup.kappa_b();
    let delta = setup.source_temp() - setup.ambient_temp();
    let numerator = delta * h * kappa_b;
    let denominator = q * (kappa_b + setup.length() * h) - h * kappa_b * delta;
    (numerator, denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Material;
    use crate::inverse::estimate_interface;
    use approx::assert_relative_eq;

    fn setup(ka: f64, kb: f64) -> InverseSetup {
        InverseSetup::new(
            10.0,
            100.0,
            25.0,
            10.0,
            Material::new("A", "A", ka).unwrap(),
            Material::new("B", "B", kb).unwrap(),
        )
        .unwrap()
    }

    /// Independent route: central finite difference of the inversion
    /// formula, E ≈ (q/l̂(q)) · (l̂(q+δ) − l̂(q−δ)) / (2δ).
    fn elasticity_fd(s: &InverseSetup, q: f64) -> f64 {
        let delta = 1e-4 * q;
        let l = |qq: f64| {
            estimate_interface(s, &crate::domain::FluxMeasurement::new(qq, 0.0).unwrap()).unwrap()
        };
        (q / l(q)) * (l(q + delta) - l(q - delta)) / (2.0 * delta)
    }

    #[test]
    fn closed_form_matches_finite_difference_at_reference_fluxes() {
        // Frozen closed-form values, cross-checked against the finite
        // difference of the inversion formula.
        let cases = [
            (73.0, 386.0, 440.29959581649234, -3.83370607028754),
            (419.0, 35.0, 266.92755733527486, 2.6826171875),
            (204.0, 156.0, 474.4751908396947, 26.2),
        ];
        for (ka, kb, q, expected) in cases {
            let s = setup(ka, kb);
            let e = elasticity(&s, q).unwrap();
            assert_relative_eq!(e, expected, max_relative = 1e-10);
            assert_relative_eq!(e, elasticity_fd(&s, q), max_relative = 1e-6);
        }
    }

    #[test]
    fn asymptote_is_the_material_b_feasibility_endpoint() {
        let s1 = setup(73.0, 386.0);
        let i1 = feasibility_interval(&s1);
        assert_relative_eq!(asymptote_location(&s1), i1.q_max(), max_relative = 1e-12);
        assert!((asymptote_location(&s1) - 595.679).abs() < 1e-3);

        let s2 = setup(419.0, 35.0);
        let i2 = feasibility_interval(&s2);
        assert_relative_eq!(asymptote_location(&s2), i2.q_min(), max_relative = 1e-12);
        assert!((asymptote_location(&s2) - 194.444).abs() < 1e-3);

        let s3 = setup(204.0, 156.0);
        assert!((asymptote_location(&s3) - 457.031).abs() < 1e-3);
    }

    #[test]
    fn sign_classification() {
        assert_eq!(classify_sign(&setup(73.0, 386.0)), ElasticitySign::Negative);
        assert_eq!(classify_sign(&setup(419.0, 35.0)), ElasticitySign::Positive);
        // Equal conductivities are rejected upstream, at setup construction.
        let err = InverseSetup::new(
            10.0,
            100.0,
            25.0,
            10.0,
            Material::new("A", "A", 73.0).unwrap(),
            Material::new("B", "B", 73.0).unwrap(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            crate::domain::ValidationError::EqualConductivities { kappa: 73.0 }
        );
    }

    #[test]
    fn sign_law_holds_pointwise() {
        for (ka, kb) in [(73.0, 386.0), (419.0, 35.0), (204.0, 156.0), (156.0, 204.0)] {
            let s = setup(ka, kb);
            let interval = feasibility_interval(&s);
            for i in 1..=20 {
                let q = interval.q_min() + interval.width() * i as f64 / 21.0;
                let e = elasticity(&s, q).unwrap();
                assert_eq!(
                    e > 0.0,
                    ka > kb,
                    "sign(E) must equal sign(κ_A − κ_B) at q = {q}"
                );
            }
        }
    }

    #[test]
    fn derivative_negative_and_matches_finite_difference() {
        let s = setup(73.0, 386.0);
        let q = 440.29959581649234;
        let d = elasticity_derivative(&s, q).unwrap();
        assert!(d < 0.0);
        assert_relative_eq!(d, -0.02467319131403362, max_relative = 1e-10);
        let h = 1e-4 * q;
        let fd = (elasticity(&s, q + h).unwrap() - elasticity(&s, q - h).unwrap()) / (2.0 * h);
        assert_relative_eq!(d, fd, max_relative = 1e-6);

        // Near-asymptote case is much steeper than the wide-interval case.
        let s3 = setup(204.0, 156.0);
        let d3 = elasticity_derivative(&s3, 474.4751908396947).unwrap();
        assert!(d3 < 0.0);
        assert_relative_eq!(d3, -1.501954188034188, max_relative = 1e-10);
        assert!(d3.abs() > d.abs());
    }

    #[test]
    fn strictly_decreasing_along_the_interval() {
        let s = setup(204.0, 156.0);
        let interval = feasibility_interval(&s);
        let mut prev = f64::INFINITY;
        for i in 1..=50 {
            let q = interval.q_min() + interval.width() * i as f64 / 51.0;
            let e = elasticity(&s, q).unwrap();
            assert!(e < prev);
            prev = e;
        }
    }

    #[test]
    fn infeasible_flux_is_rejected() {
        let s = setup(73.0, 386.0);
        assert!(matches!(
            elasticity(&s, 100.0),
            Err(InverseError::InfeasibleMeasurement { .. })
        ));
        assert!(matches!(
            elasticity_derivative(&s, 1000.0),
            Err(InverseError::InfeasibleMeasurement { .. })
        ));
    }

    #[test]
    fn asymptote_guard_reports_instead_of_exploding() {
        let s = setup(419.0, 35.0);
        let asymptote = asymptote_location(&s);
        // A feasible flux a fraction of an ulp-scale step from the
        // asymptote: strictly inside, yet within the guard band.
        let q = asymptote * (1.0 + 1e-14);
        let interval = feasibility_interval(&s);
        assert!(interval.contains(q));
        assert!(matches!(
            elasticity(&s, q),
            Err(InverseError::AtAsymptote { .. })
        ));
    }

    #[test]
    fn profile_summary() {
        let s = setup(73.0, 386.0);
        let profile = ElasticityProfile::of(&s);
        assert_eq!(profile.sign_on_feasible_interval, ElasticitySign::Negative);
        assert_relative_eq!(
            profile.asymptote_q,
            feasibility_interval(&s).q_max(),
            max_relative = 1e-12
        );
    }
}
