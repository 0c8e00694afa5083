//! Shared workloads for the criterion benches.

use qfun::qderiv::make_grid;
use qfun::{QParam, Spacing};

/// The q values swept by the CLI's `all` command.
pub const SWEEP_Q: [f64; 5] = [0.2, 0.5, 0.8, 2.0, 5.0];

pub fn params() -> Vec<QParam> {
    SWEEP_Q.iter().map(|&q| QParam::new(q).expect("valid q")).collect()
}

/// Geometric grid on [0.05, 20].
pub fn standard_grid(points: usize) -> Vec<f64> {
    make_grid(0.05, 20.0, points, Spacing::Geometric).expect("valid grid")
}
