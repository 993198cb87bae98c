//! Independent finite-difference solver for the same boundary-value
//! problem, used to validate the analytic profile.
//!
//! The grid is uniform within each material segment, with spacings chosen
//! independently so that the interface lands exactly on a node. Because
//! the exact solution is piecewise affine, every difference quotient in
//! the scheme is exact and the nodal values agree with the analytic
//! profile to linear-solve roundoff for any cell count ≥ 1 — the solver
//! is an oracle, not an approximation.

use thiserror::Error;

use crate::domain::BarSetup;

/// The tridiagonal solve hit a zero pivot. Cannot occur for valid setups;
/// reported instead of panicking in case of an internal logic error.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("internal error: singular finite-difference system")]
pub struct SingularSystem;

/// Nodal solution of the discretized problem.
#[derive(Debug, Clone, PartialEq)]
pub struct FdSolution {
    nodes: Vec<f64>,
    temps: Vec<f64>,
    interface_index: usize,
    kappa_b: f64,
    ambient_temp: f64,
    convection_coeff: f64,
}

impl FdSolution {
    /// Node positions, strictly increasing from 0 to L with one node
    /// exactly at the interface.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Nodal temperatures, °C, same length as `nodes`.
    pub fn temps(&self) -> &[f64] {
        &self.temps
    }

    /// Index of the interface node.
    pub fn interface_index(&self) -> usize {
        self.interface_index
    }

    /// Discrete heat flux at x = L recovered from the last cell,
    /// −κ_B·(u_N − u_{N−1})/Δx_B.
    pub fn boundary_flux(&self) -> f64 {
        let n = self.nodes.len() - 1;
        let dx = self.nodes[n] - self.nodes[n - 1];
        -self.kappa_b * (self.temps[n] - self.temps[n - 1]) / dx
    }

    /// Flux implied by the convective condition, h·(u(L) − Ta). Equals
    /// `boundary_flux` up to solver roundoff.
    pub fn convective_flux(&self) -> f64 {
        self.convection_coeff * (self.temps[self.temps.len() - 1] - self.ambient_temp)
    }
}

/// Discretizes and solves the two-segment problem with `cells_per_segment`
/// uniform cells on each side of the interface.
///
/// The system is: Dirichlet u = F at x = 0, centered second differences
/// of u″ = 0 inside each segment, a flux balance
/// κ_A·(u_i − u_{i−1})/Δx_A = κ_B·(u_{i+1} − u_i)/Δx_B at the interface
/// node, and the one-sided convective balance
/// −κ_B·(u_N − u_{N−1})/Δx_B = h·(u_N − Ta) at x = L.
pub fn solve(setup: &BarSetup, cells_per_segment: usize) -> Result<FdSolution, SingularSystem> {
    assert!(cells_per_segment >= 1, "need at least one cell per segment");

    let n_a = cells_per_segment;
    let n_b = cells_per_segment;
    let n = n_a + n_b; // index of the last node
    let dx_a = setup.interface() / n_a as f64;
    let dx_b = (setup.length() - setup.interface()) / n_b as f64;

    let mut nodes = Vec::with_capacity(n + 1);
    for i in 0..n_a {
        nodes.push(i as f64 * dx_a);
    }
    nodes.push(setup.interface());
    for j in 1..n_b {
        nodes.push(setup.interface() + j as f64 * dx_b);
    }
    nodes.push(setup.length());

    // Tridiagonal system rows: sub[i]·u_{i−1} + diag[i]·u_i + sup[i]·u_{i+1} = rhs[i].
    let mut sub = vec![0.0; n + 1];
    let mut diag = vec![0.0; n + 1];
    let mut sup = vec![0.0; n + 1];
    let mut rhs = vec![0.0; n + 1];

    diag[0] = 1.0;
    rhs[0] = setup.source_temp();

    for i in 1..n {
        if i == n_a {
            // Interface flux balance.
            let ca = setup.kappa_a() / dx_a;
            let cb = setup.kappa_b() / dx_b;
            sub[i] = ca;
            diag[i] = -(ca + cb);
            sup[i] = cb;
        } else {
            sub[i] = 1.0;
            diag[i] = -2.0;
            sup[i] = 1.0;
        }
    }

    let cb = setup.kappa_b() / dx_b;
    sub[n] = cb;
    diag[n] = -(cb + setup.convection_coeff());
    rhs[n] = -setup.convection_coeff() * setup.ambient_temp();

    let temps = thomas_solve(&sub, &diag, &sup, &rhs)?;

    Ok(FdSolution {
        nodes,
        temps,
        interface_index: n_a,
        kappa_b: setup.kappa_b(),
        ambient_temp: setup.ambient_temp(),
        convection_coeff: setup.convection_coeff(),
    })
}

/// Direct Thomas sweep for a tridiagonal system. `sub[0]` and
/// `sup[last]` are unused.
fn thomas_solve(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    rhs: &[f64],
) -> Result<Vec<f64>, SingularSystem> {
    let n = diag.len();
    debug_assert!(n >= 1 && sub.len() == n && sup.len() == n && rhs.len() == n);

    let mut sup_prime = vec![0.0; n];
    let mut rhs_prime = vec![0.0; n];

    if diag[0] == 0.0 {
        return Err(SingularSystem);
    }
    sup_prime[0] = sup[0] / diag[0];
    rhs_prime[0] = rhs[0] / diag[0];

    for i in 1..n {
        let denom = diag[i] - sub[i] * sup_prime[i - 1];
        if denom == 0.0 {
            return Err(SingularSystem);
        }
        sup_prime[i] = sup[i] / denom;
        rhs_prime[i] = (rhs[i] - sub[i] * rhs_prime[i - 1]) / denom;
    }

    let mut x = vec![0.0; n];
    x[n - 1] = rhs_prime[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = rhs_prime[i] - sup_prime[i] * x[i + 1];
    }
    Ok(x)
}
