//! Steady heat transfer in a two-material insulated bar, and estimation of
//! the contact point between the materials from a single noisy heat-flux
//! measurement at the right boundary.
//!
//! The bar occupies [0, L] with material A on [0, l] and material B on
//! [l, L], a constant-temperature source at x = 0 and convective
//! dissipation at x = L. The temperature profile is piecewise affine and
//! known in closed form, which makes the boundary flux an invertible
//! function of the interface position l. This crate provides:
//!
//! - [`forward`]: the analytic profile and boundary flux;
//! - [`fd`]: an independent finite-difference solver used as an oracle;
//! - [`inverse`]: interface estimation, the feasibility interval
//!   (q_m, q_M) on which inversion is valid, and analytic error bounds;
//! - [`elasticity`]: the local influence of the flux datum on the
//!   estimate (sign, asymptote, monotonicity);
//! - [`materials`]: built-in conductivities plus CSV ingestion;
//! - [`experiments`]: reproduction of the reference tables, curve
//!   sampling and seeded Monte Carlo noise sweeps.
//!
//! ```
//! use thermiface::{BarSetup, FluxMeasurement, Material};
//! use thermiface::{forward, inverse};
//!
//! let bar = BarSetup::new(
//!     10.0, 4.0, 100.0, 25.0, 10.0,
//!     Material::new("Iron", "Fe", 73.0)?,
//!     Material::new("Copper", "Cu", 386.0)?,
//! )?;
//! let q = forward::boundary_flux(&bar);
//!
//! // Pretend q was measured and recover the interface.
//! let estimate = inverse::estimate_interface(
//!     &bar.without_interface()?,
//!     &FluxMeasurement::new(q, 0.0)?,
//! ).unwrap();
//! assert!((estimate - 4.0).abs() < 1e-9);
//! # Ok::<(), thermiface::ValidationError>(())
//! ```
//!
//! All types are immutable values and all operations are pure functions;
//! everything is safe to share across threads.

pub mod domain;
pub mod elasticity;
pub mod experiments;
pub mod fd;
pub mod format;
pub mod forward;
pub mod inverse;
pub mod materials;

pub use domain::{BarSetup, FluxMeasurement, InverseSetup, Material, ValidationError};
pub use elasticity::{ElasticityProfile, ElasticitySign};
pub use forward::{ProfileCoefficients, TemperatureProfile};
pub use inverse::{EstimateReport, FeasibilityInterval, InverseError};
pub use materials::{MaterialDb, MaterialsError};
