//! Log-derivative providers, a central finite-difference oracle and a grid
//! certifier for logarithmic complete monotonicity.
//!
//! Certification here is numeric: it checks (-1)^n (ln f)^{(n)}(x) ≥ -tol on
//! a finite grid and a finite range of orders. It is not a proof.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{QError, Result};
use crate::qcore::{ln_q_gamma, psi_order, QParam, Truncation};

/// Highest derivative order accepted by [`certify_lcm`].
pub const N_MAX_CERT: usize = 6;

/// Default absolute slack on derivative signs.
pub const DEFAULT_SIGN_TOL: f64 = 1e-9;

/// Points in a default certification grid.
pub const DEFAULT_GRID_POINTS: usize = 64;

const GRID_EDGE_PULL: f64 = 1e-6;

/// Evaluates (ln f)^{(n)}(x); n = 0 is ln f itself.
pub trait LogDerivProvider {
    fn log_deriv(&self, n: usize, x: f64) -> Result<f64>;

    /// Open interval on which f is positive and the derivatives exist.
    fn domain(&self) -> (f64, f64);
}

/// Inclusive range of derivative orders (or summation indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrderRange {
    pub lo: usize,
    pub hi: usize,
}

impl OrderRange {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo == 0 || lo > hi {
            return Err(QError::Precondition(format!(
                "order range {lo}..{hi} must satisfy 1 <= lo <= hi"
            )));
        }
        Ok(Self { lo, hi })
    }

    /// 1..=n
    pub fn up_to(n: usize) -> Result<Self> {
        Self::new(1, n)
    }

    pub fn single(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl fmt::Display for OrderRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for OrderRange {
    type Err = QError;

    /// Accepts `"N"` (meaning 1..N) or `"LO..HI"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || QError::Precondition(format!("cannot parse order range {s:?}"));
        match s.split_once("..") {
            Some((lo, hi)) => {
                let lo = lo.trim().parse().map_err(|_| bad())?;
                let hi = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
                Self::new(lo, hi)
            }
            None => Self::up_to(s.trim().parse().map_err(|_| bad())?),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Geometric,
}

impl FromStr for Spacing {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Self::Linear),
            "geometric" => Ok(Self::Geometric),
            other => Err(QError::Precondition(format!("unknown spacing {other:?}"))),
        }
    }
}

/// `points` abscissae on [lo, hi] with both ends pulled in by 1e-6 so that
/// singular endpoints are never evaluated.
pub fn make_grid(lo: f64, hi: f64, points: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(QError::Precondition(format!(
            "grid needs finite lo < hi, got [{lo}, {hi}]"
        )));
    }
    if points < 2 {
        return Err(QError::Precondition("grid needs at least 2 points".into()));
    }
    let (a, b) = if hi - lo > 4.0 * GRID_EDGE_PULL {
        (lo + GRID_EDGE_PULL, hi - GRID_EDGE_PULL)
    } else {
        (lo, hi)
    };
    let last = (points - 1) as f64;
    let grid = match spacing {
        Spacing::Linear => (0..points)
            .map(|i| a + (b - a) * i as f64 / last)
            .collect(),
        Spacing::Geometric => {
            if lo <= 0.0 {
                return Err(QError::Precondition(
                    "geometric grid needs a positive lower end".into(),
                ));
            }
            let (la, lb) = (a.ln(), b.ln());
            (0..points)
                .map(|i| match i {
                    0 => a,
                    i if i == points - 1 => b,
                    i => (la + (lb - la) * i as f64 / last).exp(),
                })
                .collect()
        }
    };
    Ok(grid)
}

/// Default finite-difference step h = max(1e-5, 1e-5 |x|).
pub fn default_step(x: f64) -> f64 {
    (1e-5 * x.abs()).max(1e-5)
}

/// Central finite-difference estimate of f^{(n)}(x), 1 ≤ n ≤ 4, with O(h²)
/// truncation error. `domain` is the open interval on which f may be evaluated.
pub fn finite_diff<F>(f: F, x: f64, n: usize, h: f64, domain: (f64, f64)) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(h > 0.0) {
        return Err(QError::Precondition(format!("step h = {h} must be positive")));
    }
    let half_width = match n {
        1 | 2 => 1.0,
        3 | 4 => 2.0,
        _ => return Err(QError::UnsupportedOrder { order: n, max: 4 }),
    };
    if x - half_width * h <= domain.0 || x + half_width * h >= domain.1 {
        return Err(QError::Domain {
            what: "finite-difference stencil",
            x,
        });
    }
    let v = match n {
        1 => (f(x + h)? - f(x - h)?) / (2.0 * h),
        2 => (f(x + h)? - 2.0 * f(x)? + f(x - h)?) / (h * h),
        3 => {
            (f(x + 2.0 * h)? - 2.0 * f(x + h)? + 2.0 * f(x - h)? - f(x - 2.0 * h)?)
                / (2.0 * h * h * h)
        }
        _ => {
            (f(x + 2.0 * h)? - 4.0 * f(x + h)? + 6.0 * f(x)? - 4.0 * f(x - h)?
                + f(x - 2.0 * h)?)
                / (h * h * h * h)
        }
    };
    Ok(v)
}

/// One evaluation of (ln f)^{(n)} at x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivSample {
    pub order: usize,
    pub x: f64,
    pub value: f64,
}

impl DerivSample {
    /// (-1)^n · value
    pub fn margin(&self) -> f64 {
        if self.order % 2 == 0 {
            self.value
        } else {
            -self.value
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CMReport {
    pub orders: OrderRange,
    pub grid: Vec<f64>,
    pub tol: f64,
    /// min over grid and orders of (-1)^n (ln f)^{(n)}(x)
    pub worst_margin: f64,
    pub worst: DerivSample,
    /// First sample (ascending n, then ascending x) with margin < -tol.
    pub violation: Option<DerivSample>,
    pub passed: bool,
}

/// Checks (-1)^n prov.log_deriv(n, x) ≥ -tol for every n in `orders` and x in `grid`.
pub fn certify_lcm<P>(prov: &P, grid: &[f64], orders: OrderRange, tol: f64) -> Result<CMReport>
where
    P: LogDerivProvider + ?Sized,
{
    if orders.hi > N_MAX_CERT {
        return Err(QError::UnsupportedOrder {
            order: orders.hi,
            max: N_MAX_CERT,
        });
    }
    if !(tol >= 0.0) {
        return Err(QError::Precondition(format!("tol = {tol} must be >= 0")));
    }
    if grid.is_empty() {
        return Err(QError::Precondition("certification grid is empty".into()));
    }
    let (lo, hi) = prov.domain();
    if let Some(&x) = grid.iter().find(|&&x| !(x > lo && x < hi)) {
        return Err(QError::Domain {
            what: "certification grid point",
            x,
        });
    }

    let mut worst: Option<DerivSample> = None;
    let mut violation = None;
    for n in orders.iter() {
        for &x in grid {
            let sample = DerivSample {
                order: n,
                x,
                value: prov.log_deriv(n, x)?,
            };
            let m = sample.margin();
            if worst.map_or(true, |w| m < w.margin()) {
                worst = Some(sample);
            }
            if violation.is_none() && m < -tol {
                violation = Some(sample);
            }
        }
    }
    let worst = worst.expect("non-empty grid and orders");
    Ok(CMReport {
        orders,
        grid: grid.to_vec(),
        tol,
        worst_margin: worst.margin(),
        worst,
        passed: violation.is_none(),
        violation,
    })
}

/// f(x) = Γ_q(ax)^α / Γ_q(bx)^β with 0 < a < b.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioSpec {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl RatioSpec {
    pub fn new(a: f64, b: f64, alpha: f64, beta: f64) -> Result<Self> {
        if ![a, b, alpha, beta].iter().all(|v| v.is_finite()) {
            return Err(QError::Precondition("ratio parameters must be finite".into()));
        }
        if !(a > 0.0 && a < b) {
            return Err(QError::Precondition(format!(
                "ratio needs 0 < a < b, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b, alpha, beta })
    }

    /// The balanced spec with β = αa/b.
    pub fn balanced_with(a: f64, b: f64, alpha: f64) -> Result<Self> {
        Self::new(a, b, alpha, alpha * a / b)
    }

    /// αa = βb up to 1e-12 relative to max(1, |αa|, |βb|).
    pub fn balanced(&self) -> bool {
        let (l, r) = (self.alpha * self.a, self.beta * self.b);
        (l - r).abs() <= 1e-12 * l.abs().max(r.abs()).max(1.0)
    }
}

/// (ln f)^{(n)}(x) = α a^n ψ_q^{(n-1)}(ax) - β b^n ψ_q^{(n-1)}(bx), n ≥ 1.
pub fn ratio_log_deriv(
    spec: &RatioSpec,
    p: &QParam,
    n: usize,
    x: f64,
    t: &Truncation,
) -> Result<f64> {
    if n == 0 {
        return Err(QError::UnsupportedOrder { order: 0, max: 9 });
    }
    let left = psi_order(n - 1, p, spec.a * x, t)?.value;
    let right = psi_order(n - 1, p, spec.b * x, t)?.value;
    Ok(spec.alpha * spec.a.powi(n as i32) * left - spec.beta * spec.b.powi(n as i32) * right)
}

/// α ln Γ_q(ax) - β ln Γ_q(bx)
pub fn ratio_log(spec: &RatioSpec, p: &QParam, x: f64, t: &Truncation) -> Result<f64> {
    let left = ln_q_gamma(p, spec.a * x, t)?.value;
    let right = ln_q_gamma(p, spec.b * x, t)?.value;
    Ok(spec.alpha * left - spec.beta * right)
}

#[derive(Debug, Clone, Copy)]
pub struct RatioProvider {
    pub spec: RatioSpec,
    pub q: QParam,
    pub trunc: Truncation,
}

impl LogDerivProvider for RatioProvider {
    fn log_deriv(&self, n: usize, x: f64) -> Result<f64> {
        if n == 0 {
            ratio_log(&self.spec, &self.q, x, &self.trunc)
        } else {
            ratio_log_deriv(&self.spec, &self.q, n, x, &self.trunc)
        }
    }

    fn domain(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }
}

/// Relative agreement, with an absolute floor of `abs_floor`.
pub fn agrees(analytic: f64, numeric: f64, rel: f64, abs_floor: f64) -> bool {
    (analytic - numeric).abs() <= (rel * analytic.abs()).max(abs_floor)
}

/// Compares prov.log_deriv(n, x) against the first central difference of
/// prov.log_deriv(n - 1, ·) at x. Returns (analytic, numeric).
pub fn fd_cross_check<P>(prov: &P, n: usize, x: f64) -> Result<(f64, f64)>
where
    P: LogDerivProvider + ?Sized,
{
    if n == 0 {
        return Err(QError::UnsupportedOrder { order: 0, max: N_MAX_CERT });
    }
    let analytic = prov.log_deriv(n, x)?;
    let numeric = finite_diff(|y| prov.log_deriv(n - 1, y), x, 1, default_step(x), prov.domain())?;
    Ok((analytic, numeric))
}
