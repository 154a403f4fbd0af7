//! Interior-point complexity estimate for one convexified subproblem.
//!
//! The counts follow directly from the constraint census of the relaxed
//! program: the barrier parameter aggregates the cone dimensions, `z` counts
//! decision variables, and `z1`..`z3` collect the per-iteration factorization
//! and product costs.

use crate::config::SystemConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityEstimate {
    /// Barrier parameter of the constraint system.
    pub delta: f64,
    /// Iteration bound `sqrt(delta) * ln(1/accuracy)`.
    pub iterations_bound: f64,
    /// Decision-variable count `N^2 L + K L M^2`.
    pub z: f64,
    pub z1: f64,
    pub z2: f64,
    pub z3: f64,
    /// Order of total work: `z * sqrt(delta) * ln(1/accuracy) * (z1 + z2 z + z3 + z^2)`.
    pub total_flops_order: f64,
}

/// Evaluate the per-solve complexity formulas for a scenario at iterative
/// accuracy `accuracy` in (0, 1).
pub fn estimate_complexity(config: &SystemConfig, accuracy: f64) -> Result<ComplexityEstimate> {
    if !(accuracy > 0.0 && accuracy < 1.0) {
        return Err(Error::Domain(format!(
            "accuracy must lie in (0, 1), got {accuracy}"
        )));
    }
    let l = config.clusters as f64;
    let m = config.bs_per_cluster as f64;
    let k = config.users_per_cluster as f64;
    let n = config.cp_antennas as f64;

    let delta = 14.0 * k * l + 4.0 * m * l + m * k * l + n * l + l + 1.0;
    let z = n * n * l + k * l * m * m;
    let z1 = 28.0 * k * l + 3.0 * m * l + n.powi(3) * l + m.powi(3) * k * l + l + 1.0;
    let z2 = 15.0 * k * l + 3.0 * m * l + n * n * l + m * m * k * l + l + 1.0;
    let z3 = k * l * ((m + 2.0).powi(2) + (n + 2.0).powi(2)) + 4.0 * k * l;
    let iterations_bound = delta.sqrt() * (1.0 / accuracy).ln();
    let total_flops_order = z * iterations_bound * (z1 + z2 * z + z3 + z * z);

    Ok(ComplexityEstimate {
        delta,
        iterations_bound,
        z,
        z1,
        z2,
        z3,
        total_flops_order,
    })
}
