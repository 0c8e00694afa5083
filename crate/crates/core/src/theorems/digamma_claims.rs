//! Claims built on ψ_q right of its zero x₀: monotonicity of 1/ψ_q and the
//! concavity inequalities for ln ψ_q it implies.

use super::report::{CheckPoint, GridSummary, MarginTracker, ReportHead};
use super::{ClaimId, VerifyOptions, VerifyReport};
use crate::error::{QError, Result};
use crate::qcore::{psi_order, q_digamma, QParam, Truncation};
use crate::qderiv::{certify_lcm, LogDerivProvider, OrderRange};
use crate::qroots::{digamma_zero_with, q_euler_mascheroni, q_harmonic, DEFAULT_ROOT_TOL};

/// Grid points must sit at least this far right of x₀.
pub const ZERO_MARGIN: f64 = 1e-3;

fn zero_of(p: &QParam, t: &Truncation) -> Result<f64> {
    Ok(digamma_zero_with(p, DEFAULT_ROOT_TOL, t)?.x0)
}

/// ln(1/ψ_q) and its derivatives on (x₀, ∞).
#[derive(Debug, Clone, Copy)]
pub struct InvDigammaProvider {
    pub q: QParam,
    pub trunc: Truncation,
    pub x0: f64,
}

impl InvDigammaProvider {
    pub fn new(q: QParam, trunc: Truncation) -> Result<Self> {
        let x0 = zero_of(&q, &trunc)?;
        Ok(Self { q, trunc, x0 })
    }
}

/// (ln u)^{(j)} for j = 1..=n from u, u', ..., u^{(n)}:
/// L^{(m)} = (u^{(m)} - Σ_{j=1}^{m-1} C(m-1, j) u^{(j)} L^{(m-j)}) / u.
pub(crate) fn log_derivs_from(u: &[f64]) -> Vec<f64> {
    let n = u.len() - 1;
    let mut l = vec![0.0; n + 1];
    for m in 1..=n {
        let mut acc = u[m];
        let mut binom = 1.0;
        for j in 1..m {
            binom = binom * (m - j) as f64 / j as f64;
            acc -= binom * u[j] * l[m - j];
        }
        l[m] = acc / u[0];
    }
    l
}

impl LogDerivProvider for InvDigammaProvider {
    fn log_deriv(&self, n: usize, x: f64) -> Result<f64> {
        if !(x > self.x0) {
            return Err(QError::Domain {
                what: "ln(1/ψ_q) left of the zero of ψ_q",
                x,
            });
        }
        let u = (0..=n)
            .map(|j| psi_order(j, &self.q, x, &self.trunc).map(|r| r.value))
            .collect::<Result<Vec<_>>>()?;
        if n == 0 {
            return Ok(-u[0].ln());
        }
        Ok(-log_derivs_from(&u)[n])
    }

    fn domain(&self) -> (f64, f64) {
        (self.x0, f64::INFINITY)
    }
}

/// Certifies LCM of 1/ψ_q on a grid right of x₀.
pub fn verify_inv_digamma_lcm(
    p: &QParam,
    grid: &[f64],
    orders: OrderRange,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    let prov = InvDigammaProvider::new(*p, opts.trunc)?;
    if let Some(&x) = grid.iter().find(|&&x| !(x > prov.x0 + ZERO_MARGIN)) {
        return Err(QError::Domain {
            what: "1/ψ_q grid must lie right of x0 + 1e-3",
            x,
        });
    }
    let cm = certify_lcm(&prov, grid, orders, opts.tol)?;
    let head = ReportHead::new(ClaimId::InvPsiLcm, p.q(), GridSummary::of(grid, Some(orders)))
        .param("x0", prov.x0);
    let mut tracker = MarginTracker::new(opts.tol);
    tracker.absorb(&cm);
    tracker.finish(head)
}

fn ln_psi(p: &QParam, x: f64, t: &Truncation) -> Result<f64> {
    let v = q_digamma(p, x, t)?.value;
    if !(v > 0.0) {
        return Err(QError::Domain {
            what: "ln ψ_q needs ψ_q(x) > 0",
            x,
        });
    }
    Ok(v.ln())
}

fn require_weight(a: f64) -> Result<()> {
    if !(a > 1.0 && a.is_finite()) {
        return Err(QError::Precondition(format!("exponent a = {a} must exceed 1")));
    }
    Ok(())
}

/// [ψ_q(x)]^{1/a}[ψ_q(y)]^{1-1/a} ≤ ψ_q(x/a + (1-1/a)y) at each (x, y), in log space.
pub fn verify_ineq_1(
    p: &QParam,
    a: f64,
    points: &[(f64, f64)],
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    require_weight(a)?;
    let t = &opts.trunc;
    let x0 = zero_of(p, t)?;
    let mut tracker = MarginTracker::new(opts.tol);
    for &(x, y) in points {
        for v in [x, y] {
            if !(v > x0) {
                return Err(QError::Domain {
                    what: "inequality arguments must exceed x0",
                    x: v,
                });
            }
        }
        let w = 1.0 / a;
        let lhs = w * ln_psi(p, x, t)? + (1.0 - w) * ln_psi(p, y, t)?;
        let rhs = ln_psi(p, w * x + (1.0 - w) * y, t)?;
        tracker.record(CheckPoint::new(0, x, lhs - rhs, rhs - lhs).with_extra("y", y));
    }
    let xs: Vec<f64> = points.iter().map(|pt| pt.0).collect();
    let head = ReportHead::new(ClaimId::Ineq1, p.q(), GridSummary::of(&xs, None))
        .param("a", a)
        .param("x0", x0);
    tracker.finish(head)
}

/// [ψ_q(2)]^{a-1} ≤ [ψ_q(u+1)]^a / ψ_q(a(u-1)+2) for each u, in log space.
///
/// Points where some ψ argument is not right of x₀ are excluded rather than
/// failed; if every point is excluded a domain error is returned.
pub fn verify_ineq_010(
    p: &QParam,
    a: f64,
    us: &[f64],
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    require_weight(a)?;
    let t = &opts.trunc;
    let x0 = zero_of(p, t)?;
    let ln_psi2 = ln_psi(p, 2.0, t)?;
    let mut tracker = MarginTracker::new(opts.tol);
    let mut used = Vec::with_capacity(us.len());
    for &u in us {
        let shifted = a * (u - 1.0) + 2.0;
        if !(u > 1.0 - 2.0 / a && u + 1.0 > x0 && shifted > x0) {
            tracker.exclude();
            continue;
        }
        used.push(u);
        let lhs = (a - 1.0) * ln_psi2;
        let rhs = a * ln_psi(p, u + 1.0, t)? - ln_psi(p, shifted, t)?;
        tracker.record(CheckPoint::new(0, u, lhs - rhs, rhs - lhs));
    }
    if used.is_empty() {
        return Err(QError::Domain {
            what: "no u satisfies the positivity preconditions",
            x: us.first().copied().unwrap_or(f64::NAN),
        });
    }
    let mut head = ReportHead::new(ClaimId::Ineq010, p.q(), GridSummary::of(&used, None))
        .param("a", a)
        .param("x0", x0);
    if used.len() < us.len() {
        head = head.note(format!(
            "{} point(s) excluded by the positivity preconditions",
            us.len() - used.len()
        ));
    }
    tracker.finish(head)
}

/// ψ_q(2)² ψ_q(2n) ≤ [ln q/(1-q) γ_q - ln q H_{n,q}]² for n in `indices`, 0 < q < 1.
pub fn verify_remark_ineq(
    p: &QParam,
    indices: OrderRange,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    p.require_sub_unit("remark inequality")?;
    let t = &opts.trunc;
    let gamma = q_euler_mascheroni(p, t)?;
    let ln_q = p.ln_q();
    let ln_psi2 = ln_psi(p, 2.0, t)?;
    let mut tracker = MarginTracker::new(opts.tol);
    for n in indices.iter() {
        let nf = n as f64;
        let r = ln_q / (1.0 - p.q()) * gamma - ln_q * q_harmonic(n, p)?;
        if !(r > 0.0) {
            return Err(QError::Domain {
                what: "right side of the harmonic bound must be positive",
                x: nf,
            });
        }
        let lhs = 2.0 * ln_psi2 + ln_psi(p, 2.0 * nf, t)?;
        let rhs = 2.0 * r.ln();
        tracker.record(CheckPoint::new(n, nf, lhs - rhs, rhs - lhs));
    }
    let xs: Vec<f64> = indices.iter().map(|n| n as f64).collect();
    let head = ReportHead::new(ClaimId::RemarkHarmonic, p.q(), GridSummary::of(&xs, Some(indices)))
        .param("gamma_q", gamma);
    tracker.finish(head)
}
