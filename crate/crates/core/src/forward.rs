//! Analytic solution of the forward problem.
//!
//! The steady temperature of the two-material bar is piecewise affine,
//!
//! ```text
//! u(x) = a + b·x   on [0, l]          u(x) = c + d·x   on [l, L]
//! ```
//!
//! with the four constants fixed by the source temperature at x = 0,
//! temperature and flux continuity at x = l, and the convective condition
//! at x = L:
//!
//! ```text
//! a = F                    b = κ_B·h·(Ta − F) / ζ
//! d = κ_A·h·(Ta − F) / ζ   c = F + l·h·(κ_B − κ_A)·(Ta − F) / ζ
//! ζ = κ_A·κ_B + κ_A·h·L + (κ_B − κ_A)·h·l
//! ```
//!
//! ζ > 0 for every valid setup (regroup as κ_Aκ_B + κ_B·h·l + κ_A·h·(L−l)
//! when κ_B < κ_A), so the solve never divides by zero.

use thiserror::Error;

use crate::domain::BarSetup;

/// Position outside the bar.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("position x = {x} m is outside the bar [0, {length}] m")]
pub struct PositionOutOfDomain {
    pub x: f64,
    pub length: f64,
}

/// The four constants of the piecewise-affine profile plus the shared
/// denominator ζ, computed once per setup and reused by every evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileCoefficients {
    /// Left-segment intercept, °C. Always equals the source temperature.
    pub a: f64,
    /// Left-segment slope, °C·m⁻¹. Negative whenever F > Ta.
    pub b: f64,
    /// Right-segment intercept, °C.
    pub c: f64,
    /// Right-segment slope, °C·m⁻¹. Negative whenever F > Ta.
    pub d: f64,
    /// Shared denominator ζ, W²·m⁻²·°C⁻². Strictly positive.
    pub zeta: f64,
}

/// Solves for the profile coefficients of a valid setup.
pub fn solve_coefficients(setup: &BarSetup) -> ProfileCoefficients {
    let kappa_a = setup.kappa_a();
    let kappa_b = setup.kappa_b();
    let h = setup.convection_coeff();
    let length = setup.length();
    let interface = setup.interface();
    let delta = setup.ambient_temp() - setup.source_temp();

    let zeta = kappa_a * kappa_b + kappa_a * h * length + (kappa_b - kappa_a) * h * interface;
    let a = setup.source_temp();
    let b = kappa_b * h * delta / zeta;
    let c = setup.source_temp() + interface * h * (kappa_b - kappa_a) * delta / zeta;
    let d = kappa_a * h * delta / zeta;

    ProfileCoefficients { a, b, c, d, zeta }
}

/// A solved temperature profile: the setup together with its coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct TemperatureProfile {
    setup: BarSetup,
    coeffs: ProfileCoefficients,
}

impl TemperatureProfile {
    pub fn new(setup: BarSetup) -> Self {
        let coeffs = solve_coefficients(&setup);
        Self { setup, coeffs }
    }

    pub fn setup(&self) -> &BarSetup {
        &self.setup
    }

    pub fn coefficients(&self) -> &ProfileCoefficients {
        &self.coeffs
    }

    /// Temperature at position `x`, °C.
    ///
    /// At x = l both branches agree by construction; the left branch is
    /// evaluated there so repeated calls are bit-identical.
    pub fn temperature_at(&self, x: f64) -> Result<f64, PositionOutOfDomain> {
        let length = self.setup.length();
        if !(0.0..=length).contains(&x) {
            return Err(PositionOutOfDomain { x, length });
        }
        let ProfileCoefficients { a, b, c, d, .. } = self.coeffs;
        if x <= self.setup.interface() {
            Ok(a + b * x)
        } else {
            Ok(c + d * x)
        }
    }
}

/// Heat flux leaving the bar at x = L, W·m⁻²:
///
/// ```text
/// q = κ_B·κ_A·h·(F − Ta) / ζ
/// ```
///
/// Positive for every valid setup, and identical to −κ_B·d = −κ_A·b.
pub fn boundary_flux(setup: &BarSetup) -> f64 {
    let kappa_a = setup.kappa_a();
    let kappa_b = setup.kappa_b();
    let h = setup.convection_coeff();
    let zeta = kappa_a * kappa_b
        + kappa_a * h * setup.length()
        + (kappa_b - kappa_a) * h * setup.interface();
    kappa_b * kappa_a * h * (setup.source_temp() - setup.ambient_temp()) / zeta
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Material;
    use approx::assert_relative_eq;

    fn example_1() -> BarSetup {
        BarSetup::new(
            10.0,
            4.0,
            100.0,
            25.0,
            10.0,
            Material::new("Iron", "Fe", 73.0).unwrap(),
            Material::new("Copper", "Cu", 386.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn coefficients_of_the_iron_copper_bar() {
        // Frozen from exact rational evaluation of the closed form.
        let coeffs = solve_coefficients(&example_1());
        assert_eq!(coeffs.zeta, 47998.0);
        assert_eq!(coeffs.a, 100.0);
        assert_relative_eq!(coeffs.b, -6.03150131255469, max_relative = 1e-12);
        assert_relative_eq!(coeffs.c, 80.43668486186924, max_relative = 1e-12);
        assert_relative_eq!(coeffs.d, -1.140672528022001, max_relative = 1e-12);
    }

    #[test]
    fn continuity_and_flux_balance_at_the_interface() {
        let setup = example_1();
        let coeffs = solve_coefficients(&setup);
        let l = setup.interface();
        let left = coeffs.a + coeffs.b * l;
        let right = coeffs.c + coeffs.d * l;
        assert_relative_eq!(left, right, max_relative = 1e-9);
        assert_relative_eq!(left, 75.87399474978125, max_relative = 1e-12);
        assert_relative_eq!(
            setup.kappa_b() * coeffs.d,
            setup.kappa_a() * coeffs.b,
            max_relative = 1e-12
        );
    }

    #[test]
    fn endpoint_temperatures() {
        let profile = TemperatureProfile::new(example_1());
        assert_eq!(profile.temperature_at(0.0).unwrap(), 100.0);
        assert_relative_eq!(
            profile.temperature_at(10.0).unwrap(),
            69.02995958164924,
            max_relative = 1e-12
        );
        // Robin condition at x = L: −κ_B·d = h·(u(L) − Ta).
        let coeffs = profile.coefficients();
        let u_right = profile.temperature_at(10.0).unwrap();
        assert_relative_eq!(
            -386.0 * coeffs.d,
            10.0 * (u_right - 25.0),
            max_relative = 1e-9
        );
    }

    #[test]
    fn rejects_positions_outside_the_bar() {
        let profile = TemperatureProfile::new(example_1());
        assert!(profile.temperature_at(-0.1).is_err());
        assert!(profile.temperature_at(10.1).is_err());
        assert!(profile.temperature_at(f64::NAN).is_err());
    }

    #[test]
    fn aluminium_copper_midpoint_bar_right_boundary() {
        // Direct evaluation gives 97.2917…; the figure caption in the
        // reference material quotes 97.25, which does not match its own
        // closed form. The formula value is authoritative here.
        let setup = BarSetup::new(
            1.0,
            0.5,
            100.0,
            25.0,
            10.0,
            Material::new("Aluminium", "Al", 204.0).unwrap(),
            Material::new("Copper", "Cu", 386.0).unwrap(),
        )
        .unwrap();
        let profile = TemperatureProfile::new(setup);
        assert_relative_eq!(
            profile.temperature_at(1.0).unwrap(),
            97.2917227703381,
            max_relative = 1e-12
        );
    }

    #[test]
    fn reference_flux_values() {
        let mk = |ka: f64, kb: f64| {
            BarSetup::new(
                10.0,
                4.0,
                100.0,
                25.0,
                10.0,
                Material::new("A", "A", ka).unwrap(),
                Material::new("B", "B", kb).unwrap(),
            )
            .unwrap()
        };
        assert!((boundary_flux(&mk(73.0, 386.0)) - 440.299).abs() < 1e-3);
        assert!((boundary_flux(&mk(419.0, 35.0)) - 266.927).abs() < 1e-3);
        assert!((boundary_flux(&mk(204.0, 156.0)) - 474.475).abs() < 1e-3);
    }

    #[test]
    fn flux_equals_slope_times_conductivity() {
        let setup = example_1();
        let coeffs = solve_coefficients(&setup);
        let q = boundary_flux(&setup);
        assert_relative_eq!(q, -setup.kappa_a() * coeffs.b, max_relative = 1e-12);
        assert_relative_eq!(q, -setup.kappa_b() * coeffs.d, max_relative = 1e-12);
    }

    #[test]
    fn homogeneous_bar_collapses_to_one_line() {
        let m = Material::new("Iron", "Fe", 73.0).unwrap();
        let setup = BarSetup::new(10.0, 4.0, 100.0, 25.0, 10.0, m.clone(), m).unwrap();
        let coeffs = solve_coefficients(&setup);
        assert_eq!(coeffs.b, coeffs.d);
        assert_eq!(coeffs.a, coeffs.c);
    }

    #[test]
    fn profile_strictly_decreasing_and_bounded() {
        let profile = TemperatureProfile::new(example_1());
        let setup = profile.setup();
        let mut prev = f64::INFINITY;
        for i in 0..=100 {
            let x = setup.length() * i as f64 / 100.0;
            let u = profile.temperature_at(x).unwrap();
            assert!(u < prev, "u must strictly decrease, failed at x = {x}");
            assert!(u > setup.ambient_temp() && u <= setup.source_temp());
            prev = u;
        }
    }
}
