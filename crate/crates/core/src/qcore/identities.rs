//! Structural identities tying Γ_q, ψ_q and their 1/q counterparts together,
//! each returned as a residual with the error budget it must respect.

use serde::Serialize;

use super::digamma::q_digamma;
use super::gamma::{ln_q_gamma, q_bracket};
use super::param::{QParam, Truncation};
use super::series::rounding_allowance;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityResidual {
    pub residual: f64,
    /// Combined error bounds of the evaluations on both sides.
    pub bound: f64,
}

impl IdentityResidual {
    pub fn holds(&self) -> bool {
        self.residual <= self.bound
    }
}

/// |ln Γ_q(x) - (x-1)(x-2)/2 · ln q - ln Γ_{1/q}(x)| for q > 1.
pub fn gamma_inversion_residual(p: &QParam, x: f64, t: &Truncation) -> Result<IdentityResidual> {
    p.require_super_unit("gamma_inversion_residual")?;
    let direct = ln_q_gamma(p, x, t)?;
    let inverse = ln_q_gamma(&p.inverse()?, x, t)?;
    let shift = 0.5 * (x - 1.0) * (x - 2.0) * p.ln_q();
    let residual = (direct.value - shift - inverse.value).abs();
    let scale = direct.value.abs() + shift.abs() + inverse.value.abs();
    Ok(IdentityResidual {
        residual,
        bound: direct.err_bound + inverse.err_bound + rounding_allowance(scale),
    })
}

/// |ψ_q(x) - ψ_{1/q}(x) - (2x-3)/2 · ln q| for q > 1.
pub fn digamma_inversion_residual(p: &QParam, x: f64, t: &Truncation) -> Result<IdentityResidual> {
    p.require_super_unit("digamma_inversion_residual")?;
    let direct = q_digamma(p, x, t)?;
    let inverse = q_digamma(&p.inverse()?, x, t)?;
    let shift = 0.5 * (2.0 * x - 3.0) * p.ln_q();
    let residual = (direct.value - inverse.value - shift).abs();
    let scale = direct.value.abs() + shift.abs() + inverse.value.abs();
    Ok(IdentityResidual {
        residual,
        bound: direct.err_bound + inverse.err_bound + rounding_allowance(scale),
    })
}

/// Relative defect |Γ_q(x+1) - [x]_q Γ_q(x)| / Γ_q(x+1), evaluated in log space.
pub fn functional_equation_residual(
    p: &QParam,
    x: f64,
    t: &Truncation,
) -> Result<IdentityResidual> {
    let next = ln_q_gamma(p, x + 1.0, t)?;
    let here = ln_q_gamma(p, x, t)?;
    let ln_bracket = q_bracket(p, x).ln();
    let diff = ln_bracket + here.value - next.value;
    let scale = ln_bracket.abs() + here.value.abs() + next.value.abs();
    Ok(IdentityResidual {
        residual: diff.exp_m1().abs(),
        bound: (here.err_bound + next.err_bound + rounding_allowance(scale)).exp_m1(),
    })
}

/// |ψ_q(x+1) - ψ_q(x) + q^x/(1 - q^x) · ln q|, valid in both regimes.
pub fn digamma_recurrence_residual(
    p: &QParam,
    x: f64,
    t: &Truncation,
) -> Result<IdentityResidual> {
    let next = q_digamma(p, x + 1.0, t)?;
    let here = q_digamma(p, x, t)?;
    let e = x * p.ln_q();
    // q^x/(1 - q^x) written to stay accurate on both sides of q = 1
    let jump = -e.exp() / e.exp_m1() * p.ln_q();
    let residual = (next.value - here.value + jump).abs();
    let scale = next.value.abs() + here.value.abs() + jump.abs();
    Ok(IdentityResidual {
        residual,
        bound: next.err_bound + here.err_bound + rounding_allowance(scale),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Truncation {
        Truncation::default()
    }

    #[test]
    fn gamma_inversion_examples() {
        let two = QParam::new(2.0).unwrap();
        for x in [1.0, 2.0] {
            let r = gamma_inversion_residual(&two, x, &t()).unwrap();
            assert!(r.residual <= 1e-12, "x = {x}: {r:?}");
        }
        let three = QParam::new(3.0).unwrap();
        let r = gamma_inversion_residual(&three, 4.2, &t()).unwrap();
        assert!(r.residual <= 1e-11 && r.holds(), "{r:?}");
    }

    #[test]
    fn digamma_inversion_examples() {
        let two = QParam::new(2.0).unwrap();
        assert!(digamma_inversion_residual(&two, 1.5, &t()).unwrap().residual <= 1e-12);
        assert!(digamma_inversion_residual(&two, 1.0, &t()).unwrap().residual <= 1e-11);
        let five = QParam::new(5.0).unwrap();
        let r = digamma_inversion_residual(&five, 3.0, &t()).unwrap();
        assert!(r.residual <= 1e-11 && r.holds(), "{r:?}");
    }

    #[test]
    fn inversion_rejects_sub_unit() {
        let p = QParam::new(0.5).unwrap();
        assert!(gamma_inversion_residual(&p, 1.0, &t()).is_err());
        assert!(digamma_inversion_residual(&p, 1.0, &t()).is_err());
    }

    #[test]
    fn recurrence_holds_in_both_regimes() {
        for q in [0.3, 0.8, 2.0] {
            let p = QParam::new(q).unwrap();
            for x in [0.1, 1.0, 7.0] {
                let r = digamma_recurrence_residual(&p, x, &t()).unwrap();
                assert!(r.residual <= 1e-10, "q={q} x={x} {r:?}");
            }
        }
    }
}
