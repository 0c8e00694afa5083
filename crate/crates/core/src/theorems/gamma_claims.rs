//! Γ_q on (0, x₀): logarithmic complete monotonicity and the superadditivity
//! Γ_q(x+1)Γ_q(y+1) ≤ Γ_q(x+y+2).

use super::report::{CheckPoint, GridSummary, MarginTracker, ReportHead};
use super::{ClaimId, VerifyOptions, VerifyReport};
use crate::error::{QError, Result};
use crate::qcore::{ln_q_gamma, psi_order, QParam, Truncation};
use crate::qderiv::{certify_lcm, LogDerivProvider, OrderRange};
use crate::qroots::{digamma_zero_with, DEFAULT_ROOT_TOL};

/// ln Γ_q; order n ≥ 1 is ψ_q^{(n-1)}.
#[derive(Debug, Clone, Copy)]
pub struct LnGammaProvider {
    pub q: QParam,
    pub trunc: Truncation,
}

impl LogDerivProvider for LnGammaProvider {
    fn log_deriv(&self, n: usize, x: f64) -> Result<f64> {
        if n == 0 {
            ln_q_gamma(&self.q, x, &self.trunc).map(|r| r.value)
        } else {
            psi_order(n - 1, &self.q, x, &self.trunc).map(|r| r.value)
        }
    }

    fn domain(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }
}

/// (i) (-1)ⁿ(ln Γ_q)^{(n)} ≥ -tol on `grid_lcm` ⊂ (0, x₀);
/// (ii) ln Γ_q(x+y+2) - ln Γ_q(x+1) - ln Γ_q(y+1) ≥ -tol on `grid_x` × `grid_x`, grid_x ⊂ (0, 1).
///
/// Either grid may be empty, not both.
pub fn verify_gamma_lcm_and_superadd(
    p: &QParam,
    grid_x: &[f64],
    grid_lcm: &[f64],
    orders: OrderRange,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    let pairs: Vec<(f64, f64)> = grid_x
        .iter()
        .flat_map(|&x| grid_x.iter().map(move |&y| (x, y)))
        .collect();
    verify_gamma_lcm_and_superadd_pairs(p, &pairs, grid_lcm, orders, opts)
}

/// As [`verify_gamma_lcm_and_superadd`] with explicit (x, y) pairs for part (ii).
pub fn verify_gamma_lcm_and_superadd_pairs(
    p: &QParam,
    pairs: &[(f64, f64)],
    grid_lcm: &[f64],
    orders: OrderRange,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    if pairs.is_empty() && grid_lcm.is_empty() {
        return Err(QError::Precondition("both grids are empty".into()));
    }
    let t = &opts.trunc;
    let x0 = digamma_zero_with(p, DEFAULT_ROOT_TOL, t)?.x0;
    if let Some(&x) = grid_lcm.iter().find(|&&x| !(x > 0.0 && x < x0)) {
        return Err(QError::Domain {
            what: "Γ_q LCM grid must lie in (0, x0)",
            x,
        });
    }
    if let Some(x) = pairs
        .iter()
        .flat_map(|&(x, y)| [x, y])
        .find(|&x| !(x > 0.0 && x < 1.0))
    {
        return Err(QError::Domain {
            what: "superadditivity grid must lie in (0, 1)",
            x,
        });
    }

    let mut tracker = MarginTracker::new(opts.tol);
    if !grid_lcm.is_empty() {
        let prov = LnGammaProvider { q: *p, trunc: *t };
        tracker.absorb(&certify_lcm(&prov, grid_lcm, orders, opts.tol)?);
    }
    let shifted = |x: f64| ln_q_gamma(p, x + 1.0, t).map(|r| r.value);
    for &(x, y) in pairs {
        let gap = ln_q_gamma(p, x + y + 2.0, t)?.value - shifted(x)? - shifted(y)?;
        tracker.record(CheckPoint::new(0, x, gap, gap).with_extra("y", y));
    }

    let xs: Vec<f64> = pairs.iter().map(|pt| pt.0).collect();
    let (grid, orders_used) = if grid_lcm.is_empty() {
        (&xs[..], None)
    } else {
        (grid_lcm, Some(orders))
    };
    let mut head = ReportHead::new(ClaimId::GammaLcmSuperadd, p.q(), GridSummary::of(grid, orders_used))
        .param("x0", x0)
        .note("order 1 checks -psi_q >= 0 left of x0");
    if !pairs.is_empty() {
        head = head
            .param("superadd_points", pairs.len() as f64)
            .note("superadditivity status is empirical over the sampled (x, y) grid");
    }
    tracker.finish(head)
}
