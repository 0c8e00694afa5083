use super::report::{Branch, CheckPoint, GridSummary, MarginTracker, ReportHead};
use super::{ClaimId, VerifyOptions, VerifyReport};
use crate::error::{QError, Result};
use crate::qcore::{ln_q_gamma, q_digamma, QParam, Truncation};
use crate::qderiv::{certify_lcm, OrderRange, RatioProvider, RatioSpec};

fn ratio_head(claim: ClaimId, spec: &RatioSpec, p: &QParam, grid: GridSummary) -> ReportHead {
    ReportHead::new(claim, p.q(), grid)
        .param("a", spec.a)
        .param("b", spec.b)
        .param("alpha", spec.alpha)
        .param("beta", spec.beta)
}

/// Certifies or refutes logarithmic complete monotonicity of
/// Γ_q(ax)^α / Γ_q(bx)^β on `grid`.
///
/// The branch is picked from the parameters: balanced with α ≥ 0 expects a
/// pass; otherwise, for 0 < q < 1, a violation is expected. Unbalanced specs
/// with q > 1 are outside the claim and carry no expectation.
pub fn verify_theorem_ratio_lcm(
    spec: &RatioSpec,
    p: &QParam,
    grid: &[f64],
    orders: OrderRange,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    let prov = RatioProvider {
        spec: *spec,
        q: *p,
        trunc: opts.trunc,
    };
    let cm = certify_lcm(&prov, grid, orders, opts.tol)?;
    let (branch, expected) = if spec.balanced() && spec.alpha >= 0.0 {
        (Branch::Sufficiency, Some(true))
    } else if p.is_sub_unit() {
        (Branch::Necessity, Some(false))
    } else {
        (Branch::Uncovered, None)
    };
    let mut head = ratio_head(ClaimId::RatioLcm, spec, p, GridSummary::of(grid, Some(orders)));
    head.branch = Some(branch);
    head.expected_pass = expected;
    if !p.is_sub_unit() && branch == Branch::Sufficiency {
        head = head.note("q > 1: sufficiency extended through the inversion identity");
    }
    let mut tracker = MarginTracker::new(opts.tol);
    tracker.absorb(&cm);
    tracker.finish(head)
}

fn require_balanced_nonnegative(spec: &RatioSpec) -> Result<()> {
    if !(spec.balanced() && spec.alpha >= 0.0 && spec.beta >= 0.0) {
        return Err(QError::Precondition(format!(
            "inequality needs alpha, beta >= 0 with alpha*a = beta*b, got {spec:?}"
        )));
    }
    Ok(())
}

/// ln of Γ_q(bx₁)^β/Γ_q(ax₁)^α · Γ_q(ax)^α/Γ_q(bx)^β.
pub fn ineq_555_log_middle(
    spec: &RatioSpec,
    p: &QParam,
    x1: f64,
    x: f64,
    t: &Truncation,
) -> Result<f64> {
    let at = |y: f64| -> Result<f64> {
        Ok(spec.alpha * ln_q_gamma(p, spec.a * y, t)?.value
            - spec.beta * ln_q_gamma(p, spec.b * y, t)?.value)
    };
    Ok(at(x)? - at(x1)?)
}

/// αa(ψ_q(ax₁) - ψ_q(bx₁)): the slope of the lower bound, and the limit of
/// the log-middle divided by (x - x₁) as x → x₁⁺.
pub fn ineq_555_slope(spec: &RatioSpec, p: &QParam, x1: f64, t: &Truncation) -> Result<f64> {
    let da = q_digamma(p, spec.a * x1, t)?.value;
    let db = q_digamma(p, spec.b * x1, t)?.value;
    Ok(spec.alpha * spec.a * (da - db))
}

/// exp[αa(x - x₁)(ψ_q(ax₁) - ψ_q(bx₁))] ≤ middle ≤ 1 for x > x₁ > 0, in log space.
pub fn verify_ineq_555(
    spec: &RatioSpec,
    p: &QParam,
    x1: f64,
    grid: &[f64],
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    require_balanced_nonnegative(spec)?;
    if !(x1 > 0.0 && x1.is_finite()) {
        return Err(QError::Domain {
            what: "inequality base point x1",
            x: x1,
        });
    }
    let slope = ineq_555_slope(spec, p, x1, &opts.trunc)?;
    let mut tracker = MarginTracker::new(opts.tol);
    let mut used = Vec::with_capacity(grid.len());
    for &x in grid {
        if !(x > x1) {
            tracker.exclude();
            continue;
        }
        used.push(x);
        let middle = ineq_555_log_middle(spec, p, x1, x, &opts.trunc)?;
        let lower = slope * (x - x1);
        let margin = (middle - lower).min(-middle);
        tracker.record(CheckPoint::new(0, x, middle, margin));
    }
    let head = ratio_head(ClaimId::Ineq555, spec, p, GridSummary::of(&used, None)).param("x1", x1);
    tracker.finish(head)
}

/// exp[2q(n-1) ln q/(1-q)] ≤ Γ_q(n)²/Γ_q(2n) ≤ 1 for n in `indices`, 0 < q < 1.
pub fn verify_ineq_666(
    p: &QParam,
    indices: OrderRange,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    p.require_sub_unit("inequality c-666")?;
    let t = &opts.trunc;
    let q = p.q();
    let mut tracker = MarginTracker::new(opts.tol);
    for n in indices.iter() {
        let nf = n as f64;
        let middle = 2.0 * ln_q_gamma(p, nf, t)?.value - ln_q_gamma(p, 2.0 * nf, t)?.value;
        let lower = 2.0 * q * (nf - 1.0) * p.ln_q() / (1.0 - q);
        tracker.record(CheckPoint::new(n, nf, middle, (middle - lower).min(-middle)));
    }
    let xs: Vec<f64> = indices.iter().map(|n| n as f64).collect();
    let head = ReportHead::new(ClaimId::Ineq666, q, GridSummary::of(&xs, Some(indices)));
    tracker.finish(head)
}
