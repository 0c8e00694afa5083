//! The positive zero x₀(q) of ψ_q and the q-analogues of γ and H_n.

use serde::Serialize;

use crate::error::{QError, Result};
use crate::qcore::{q_digamma, q_polygamma, QParam, Truncation};

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

const BISECTION_STEPS: usize = 40;
const NEWTON_STEPS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroResult {
    pub x0: f64,
    /// |ψ_q(x0)|
    pub residual: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
}

pub fn digamma_zero(p: &QParam, tol: f64) -> Result<ZeroResult> {
    digamma_zero_with(p, tol, &Truncation::default())
}

/// Bisection on [1, 2] followed by a safeguarded Newton polish with ψ_q'.
pub fn digamma_zero_with(p: &QParam, tol: f64, t: &Truncation) -> Result<ZeroResult> {
    if !(tol > 0.0) {
        return Err(QError::Precondition(format!("root tolerance {tol} must be > 0")));
    }
    let psi = |x: f64| q_digamma(p, x, t).map(|r| r.value);
    let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
    let (f_lo, f_hi) = (psi(lo)?, psi(hi)?);
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(QError::Bracket {
            lo,
            hi,
            f_lo,
            f_hi,
        });
    }

    let mut iterations = 0;
    let mut x = 0.5 * (lo + hi);
    let mut fx = psi(x)?;
    for _ in 0..BISECTION_STEPS {
        iterations += 1;
        if fx == 0.0 {
            break;
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        x = 0.5 * (lo + hi);
        fx = psi(x)?;
    }

    for _ in 0..NEWTON_STEPS {
        if fx.abs() <= tol * 1e-3 {
            break;
        }
        iterations += 1;
        let slope = q_polygamma(1, p, x, t)?.value;
        let mut next = x - fx / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if next == x {
            break;
        }
        x = next;
        fx = psi(x)?;
        if fx < 0.0 {
            lo = lo.max(x);
        } else if fx > 0.0 {
            hi = hi.min(x);
        }
    }

    if fx.abs() > tol {
        return Err(QError::NonConvergent {
            what: "ψ_q zero",
            max_terms: iterations,
        });
    }
    Ok(ZeroResult {
        x0: x,
        residual: fx.abs(),
        iterations,
        bracket: (lo, hi),
    })
}

/// γ_q = (1 - q)/ln q · ψ_q(1), 0 < q < 1.
pub fn q_euler_mascheroni(p: &QParam, t: &Truncation) -> Result<f64> {
    p.require_sub_unit("q_euler_mascheroni")?;
    let psi1 = q_digamma(p, 1.0, t)?.value;
    Ok((1.0 - p.q()) / p.ln_q() * psi1)
}

/// H_{n,q} = Σ_{k=1}^{n} q^k/(1 - q^k), 0 < q < 1.
pub fn q_harmonic(n: usize, p: &QParam) -> Result<f64> {
    p.require_sub_unit("q_harmonic")?;
    if n == 0 {
        return Err(QError::Precondition("q_harmonic needs n >= 1".into()));
    }
    let ln_q = p.ln_q();
    Ok((1..=n)
        .map(|k| {
            let e = k as f64 * ln_q;
            e.exp() / -e.exp_m1()
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_for_half() {
        let p = QParam::new(0.5).unwrap();
        let z = digamma_zero(&p, DEFAULT_ROOT_TOL).unwrap();
        assert!(z.x0 > 1.0 && z.x0 < 2.0);
        assert!(z.residual <= 1e-12);
        let tight = digamma_zero(&p, 1e-13).unwrap();
        assert!((tight.x0 - z.x0).abs() < 1e-10);
        let t = Truncation::default();
        assert!(q_digamma(&p, z.x0 - 0.1, &t).unwrap().value < 0.0);
        assert!(q_digamma(&p, z.x0 + 0.1, &t).unwrap().value > 0.0);
    }

    #[test]
    fn zero_super_unit() {
        for q in [1.5, 2.0, 5.0, 50.0] {
            let z = digamma_zero(&QParam::new(q).unwrap(), DEFAULT_ROOT_TOL).unwrap();
            assert!(z.x0 > 1.0 && z.x0 < 2.0, "q = {q}");
        }
    }

    #[test]
    fn euler_constant_and_harmonic() {
        let p = QParam::new(0.5).unwrap();
        let t = Truncation::default();
        let psi1 = q_digamma(&p, 1.0, &t).unwrap().value;
        let g = q_euler_mascheroni(&p, &t).unwrap();
        assert!((g - 0.5 / 0.5f64.ln() * psi1).abs() < 1e-15);
        assert!((g - 0.3034).abs() < 1e-4);
        assert!((q_harmonic(1, &p).unwrap() - 1.0).abs() < 1e-15);
        assert!((q_harmonic(2, &p).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        // H_{10,1/2} = Σ 1/(2^k - 1)
        let oracle: f64 = (1..=10).map(|k| 1.0 / (2f64.powi(k) - 1.0)).sum();
        assert!((q_harmonic(10, &p).unwrap() - oracle).abs() < 1e-15);
        assert!((oracle - 1.6057).abs() < 1e-4);
    }

    #[test]
    fn sub_unit_only_constants() {
        let p = QParam::new(2.0).unwrap();
        assert!(q_euler_mascheroni(&p, &Truncation::default()).is_err());
        assert!(q_harmonic(3, &p).is_err());
        assert!(q_harmonic(0, &QParam::new(0.5).unwrap()).is_err());
    }
}
