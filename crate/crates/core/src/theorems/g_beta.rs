//! g_β(q;x) = 1/(1+q) [Γ_{q²}(x+½)/Γ_{q²}(x+1)]² exp[β(1-q²)q^{2x}/(2(1-q^{2x})) + ψ_q(2x)]
//! for 0 < q < 1, its log-derivatives, and the coefficient test behind the
//! threshold β* = -13 ln q / (6(1 - q²)).

use super::report::{CheckPoint, GridSummary, MarginTracker, ReportHead};
use super::{ClaimId, VerifyOptions, VerifyReport};
use crate::error::{QError, Result};
use crate::qcore::{
    ln_q_gamma, psi_order, q_digamma, IdentityResidual, QParam, Truncation,
};
use crate::qcore::series::rounding_allowance;
use crate::qderiv::{certify_lcm, LogDerivProvider, OrderRange};

/// |ψ_q(2x) - ln(1+q) - ½ψ_{q²}(x) - ½ψ_{q²}(x+½)|, the q-duplication
/// identity used to rewrite ln g_β.
pub fn psi_duplication_residual(p: &QParam, x: f64, t: &Truncation) -> Result<IdentityResidual> {
    p.require_sub_unit("psi_duplication_residual")?;
    let sq = p.squared()?;
    let lhs = q_digamma(p, 2.0 * x, t)?;
    let h0 = q_digamma(&sq, x, t)?;
    let h1 = q_digamma(&sq, x + 0.5, t)?;
    let log_term = p.q().ln_1p();
    let residual = (lhs.value - log_term - 0.5 * h0.value - 0.5 * h1.value).abs();
    let scale = lhs.value.abs() + log_term + 0.5 * (h0.value.abs() + h1.value.abs());
    Ok(IdentityResidual {
        residual,
        bound: lhs.err_bound
            + 0.5 * (h0.err_bound + h1.err_bound)
            + rounding_allowance(scale),
    })
}

/// Sweeps the duplication residual over `grid`; margin is bound - residual.
pub fn verify_psi_duplication(
    p: &QParam,
    grid: &[f64],
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    let mut tracker = MarginTracker::new(opts.tol);
    for &x in grid {
        let r = psi_duplication_residual(p, x, &opts.trunc)?;
        tracker.record(CheckPoint::new(0, x, r.residual, r.bound - r.residual));
    }
    tracker.finish(ReportHead::new(
        ClaimId::PsiDuplication,
        p.q(),
        GridSummary::of(grid, None),
    ))
}

/// β* = -13 ln q / (6(1 - q²)).
pub fn beta_star(p: &QParam) -> Result<f64> {
    p.require_sub_unit("beta_star")?;
    Ok(-13.0 * p.ln_q() / (6.0 * one_minus_q2(p)))
}

fn one_minus_q2(p: &QParam) -> f64 {
    -(2.0 * p.ln_q()).exp_m1()
}

/// ln g_β(q;x) evaluated straight from the definition (no duplication identity).
pub fn ln_g_beta(p: &QParam, beta: f64, x: f64, t: &Truncation) -> Result<f64> {
    p.require_sub_unit("ln_g_beta")?;
    let sq = p.squared()?;
    let e = 2.0 * x * p.ln_q();
    let frac = e.exp() / -e.exp_m1();
    Ok(-p.q().ln_1p() + 2.0 * ln_q_gamma(&sq, x + 0.5, t)?.value
        - 2.0 * ln_q_gamma(&sq, x + 1.0, t)?.value
        + 0.5 * beta * one_minus_q2(p) * frac
        + q_digamma(p, 2.0 * x, t)?.value)
}

/// (ln g_β)^{(n)}(x), n ≥ 1, assembled in base Q = q²:
///
/// 2ψ_Q^{(n-1)}(x+½) - 2ψ_Q^{(n-1)}(x+1) + ½ψ_Q^{(n)}(x) + ½ψ_Q^{(n)}(x+½)
/// + β(1-q²)/2 · dⁿ/dxⁿ[Q^x/(1-Q^x)],
///
/// where the last derivative is -(ψ_Q^{(n)}(x+1) - ψ_Q^{(n)}(x))/ln Q by the
/// recurrence of ψ_Q.
pub fn g_beta_log_deriv(p: &QParam, beta: f64, n: usize, x: f64, t: &Truncation) -> Result<f64> {
    p.require_sub_unit("g_beta_log_deriv")?;
    if n == 0 {
        return Err(QError::UnsupportedOrder { order: 0, max: 7 });
    }
    let sq = p.squared()?;
    let psi = |order: usize, y: f64| psi_order(order, &sq, y, t).map(|r| r.value);
    let h_at_1 = psi(n, x + 1.0)?;
    let h_at_0 = psi(n, x)?;
    let ratio_deriv = -(h_at_1 - h_at_0) / sq.ln_q();
    Ok(2.0 * psi(n - 1, x + 0.5)? - 2.0 * psi(n - 1, x + 1.0)?
        + 0.5 * h_at_0
        + 0.5 * psi(n, x + 0.5)?
        + 0.5 * beta * one_minus_q2(p) * ratio_deriv)
}

#[derive(Debug, Clone, Copy)]
pub struct GBetaProvider {
    pub q: QParam,
    pub beta: f64,
    pub trunc: Truncation,
}

impl LogDerivProvider for GBetaProvider {
    fn log_deriv(&self, n: usize, x: f64) -> Result<f64> {
        if n == 0 {
            ln_g_beta(&self.q, self.beta, x, &self.trunc)
        } else {
            g_beta_log_deriv(&self.q, self.beta, n, x, &self.trunc)
        }
    }

    fn domain(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }
}

/// Certifies LCM of g_β on `grid` after gating on the duplication identity.
pub fn verify_g_beta_lcm(
    p: &QParam,
    beta: f64,
    grid: &[f64],
    orders: OrderRange,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    let threshold = beta_star(p)?;
    for &x in grid {
        let r = psi_duplication_residual(p, x, &opts.trunc)?;
        if !r.holds() {
            return Err(QError::Gate(format!(
                "duplication residual {} exceeds bound {} at q = {}, x = {x}",
                r.residual,
                r.bound,
                p.q()
            )));
        }
    }
    let prov = GBetaProvider {
        q: *p,
        beta,
        trunc: opts.trunc,
    };
    let cm = certify_lcm(&prov, grid, orders, opts.tol)?;
    let mut head = ReportHead::new(ClaimId::GBetaLcm, p.q(), GridSummary::of(grid, Some(orders)))
        .param("beta", beta)
        .param("beta_star", threshold);
    if beta < threshold {
        head.expected_pass = None;
        head = head.note("beta below the sufficient threshold; no outcome is claimed");
    }
    let mut tracker = MarginTracker::new(opts.tol);
    tracker.absorb(&cm);
    tracker.finish(head)
}

/// c_n = -β(1-q²)/(2 ln q) - 1 - 1/2ⁿ + 1/((n+1)2^{n-1}), the bracket
/// multiplying t^{n+1}/n! in the series of Φ_{β,q}.
pub fn phi_series_coefficient(beta: f64, p: &QParam, n: usize) -> Result<f64> {
    p.require_sub_unit("phi_series_coefficient")?;
    if n == 0 {
        return Err(QError::Precondition("coefficient index must be >= 1".into()));
    }
    let lead = -beta * one_minus_q2(p) / (2.0 * p.ln_q());
    let half_pow = 0.5f64.powi(n as i32);
    Ok(lead - 1.0 - half_pow + 2.0 * half_pow / (n as f64 + 1.0))
}

/// Checks c_n ≥ -tol for n in `indices`.
pub fn verify_phi_coefficients(
    p: &QParam,
    beta: f64,
    indices: OrderRange,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    let threshold = beta_star(p)?;
    let mut tracker = MarginTracker::new(opts.tol);
    for n in indices.iter() {
        let c = phi_series_coefficient(beta, p, n)?;
        tracker.record(CheckPoint::new(n, n as f64, c, c));
    }
    let xs: Vec<f64> = indices.iter().map(|n| n as f64).collect();
    let mut head = ReportHead::new(ClaimId::PhiCoeff, p.q(), GridSummary::of(&xs, Some(indices)))
        .param("beta", beta)
        .param("beta_star", threshold);
    if beta < threshold {
        head.expected_pass = None;
    } else {
        head = head.note("at beta = beta_star the bracket vanishes exactly at n = 2");
    }
    tracker.finish(head)
}
