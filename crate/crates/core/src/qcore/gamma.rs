use super::param::{EvalResult, QParam, Regime, Truncation};
use super::series::{log_product, rounding_allowance};
use crate::error::{QError, Result};

pub(crate) fn check_arg(x: f64, what: &'static str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(QError::Domain { what, x })
    }
}

/// ln Γ_q(x) for x > 0 from the log of the defining infinite product.
///
/// For 0 < q < 1:
/// ln Γ_q(x) = (1 - x) ln(1 - q) + Σ_{j≥0} [ln(1 - q^{j+1}) - ln(1 - q^{j+x})].
///
/// For q > 1 the same sum runs in b = 1/q, with prefactor
/// (1 - x) ln(q - 1) + x(x - 1)/2 · ln q.
pub fn ln_q_gamma(p: &QParam, x: f64, t: &Truncation) -> Result<EvalResult> {
    check_arg(x, "ln Γ_q")?;
    let (ln_b, prefix, prefix_mag) = match p.regime() {
        Regime::SubUnit => {
            let c = (1.0 - x) * (-p.q()).ln_1p();
            (p.ln_q(), c, c.abs())
        }
        Regime::SuperUnit => {
            let c1 = (1.0 - x) * (p.q() - 1.0).ln();
            let c2 = 0.5 * x * (x - 1.0) * p.ln_q();
            (-p.ln_q(), c1 + c2, c1.abs() + c2.abs())
        }
    };
    let s = log_product(ln_b, x, prefix_mag, t, "ln Γ_q")?;
    Ok(EvalResult {
        value: prefix + s.sum,
        err_bound: s.tail + rounding_allowance(prefix_mag + s.abs_sum),
        terms: s.terms,
    })
}

/// Γ_q(x) = exp(ln Γ_q(x)); reports [`QError::Overflow`] past the f64 range.
pub fn q_gamma(p: &QParam, x: f64, t: &Truncation) -> Result<EvalResult> {
    let ln = ln_q_gamma(p, x, t)?;
    if ln.value > f64::MAX.ln() {
        return Err(QError::Overflow {
            ln_value: ln.value,
        });
    }
    let value = ln.value.exp();
    Ok(EvalResult {
        value,
        err_bound: value * ln.err_bound.exp_m1() + rounding_allowance(value),
        terms: ln.terms,
    })
}

/// The q-number [x]_q = (1 - q^x)/(1 - q), equal to (q^x - 1)/(q - 1) for q > 1.
pub fn q_bracket(p: &QParam, x: f64) -> f64 {
    (x * p.ln_q()).exp_m1() / p.ln_q().exp_m1()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Truncation {
        Truncation::default()
    }

    #[test]
    fn normalisation_points() {
        let p = QParam::new(0.5).unwrap();
        let g1 = q_gamma(&p, 1.0, &t()).unwrap();
        assert_eq!(g1.value, 1.0);
        assert_eq!(g1.terms, 0);
        assert!(ln_q_gamma(&p, 1.0, &t()).unwrap().value.abs() < 1e-15);
        let g3 = q_gamma(&p, 3.0, &t()).unwrap();
        assert!((g3.value - 1.5).abs() <= 1.5 * g3.err_bound);
        let l3 = ln_q_gamma(&p, 3.0, &t()).unwrap();
        assert!((l3.value - 1.5f64.ln()).abs() <= l3.err_bound);
        assert!(l3.err_bound < 1e-12);
    }

    #[test]
    fn functional_equation_oracle_sub_unit() {
        let p = QParam::new(0.5).unwrap();
        let lhs = q_gamma(&p, 2.7, &t()).unwrap().value;
        let rhs = q_bracket(&p, 1.7) * q_gamma(&p, 1.7, &t()).unwrap().value;
        assert!((lhs - rhs).abs() <= 1e-12 * lhs);
    }

    #[test]
    fn super_unit_integer_values() {
        // Γ_2(1) = 1, Γ_2(2) = [1]_2 = 1, Γ_2(3) = [2]_2 = 3.
        let p = QParam::new(2.0).unwrap();
        assert!((q_gamma(&p, 3.0, &t()).unwrap().value - 3.0).abs() < 1e-12);
        assert!((q_gamma(&p, 2.0, &t()).unwrap().value - 1.0).abs() < 1e-12);
        // Γ_2(4) = [3]_2 [2]_2 = 7 * 3
        assert!((q_gamma(&p, 4.0, &t()).unwrap().value - 21.0).abs() < 1e-11);
    }

    #[test]
    fn direct_product_oracle() {
        // 10^4 explicit factors of the defining product at q = 0.3.
        let q: f64 = 0.3;
        let x = 7.5;
        let mut ln_prod = (1.0 - x) * (1.0 - q).ln();
        for j in 0..10_000 {
            let j = j as f64;
            ln_prod += (1.0 - q.powf(j + 1.0)).ln() - (1.0 - q.powf(j + x)).ln();
        }
        let p = QParam::new(q).unwrap();
        let got = ln_q_gamma(&p, x, &t()).unwrap();
        assert!((got.value.exp() - ln_prod.exp()).abs() <= 1e-12 * ln_prod.exp());
        assert!(got.err_bound <= 1e-12);
    }

    #[test]
    fn bracket_values() {
        let half = QParam::new(0.5).unwrap();
        assert!((q_bracket(&half, 1.0) - 1.0).abs() < 1e-15);
        assert!((q_bracket(&half, 2.0) - 1.5).abs() < 1e-15);
        let two = QParam::new(2.0).unwrap();
        assert!((q_bracket(&two, 3.0) - 7.0).abs() < 1e-14);
    }

    #[test]
    fn domain_and_overflow() {
        let p = QParam::new(0.5).unwrap();
        assert!(matches!(
            ln_q_gamma(&p, 0.0, &t()),
            Err(QError::Domain { .. })
        ));
        assert!(matches!(
            q_gamma(&p, -1.0, &t()),
            Err(QError::Domain { .. })
        ));
        let big = QParam::new(5.0).unwrap();
        assert!(matches!(
            q_gamma(&big, 40.0, &t()),
            Err(QError::Overflow { .. })
        ));
        assert!(ln_q_gamma(&big, 40.0, &t()).is_ok());
    }
}
