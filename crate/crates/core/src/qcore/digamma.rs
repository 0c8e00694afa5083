use super::gamma::check_arg;
use super::param::{EvalResult, QParam, Regime, Truncation};
use super::series::{lambert_moment, rounding_allowance, shifted_lambert};
use crate::error::{QError, Result};

/// Highest polygamma order served by [`q_polygamma`].
pub const N_MAX_ORDER: usize = 8;

/// ψ_q^{(n)} for 0 < q < 1 from the Lambert series
/// ψ_q(x) = -ln(1 - q) + ln q Σ_{k≥1} q^{kx}/(1 - q^k) differentiated term by term.
fn sub_unit_psi(p: &QParam, n: usize, x: f64, t: &Truncation) -> Result<EvalResult> {
    debug_assert!(p.is_sub_unit());
    let ln_q = p.ln_q();
    if n == 0 {
        let c = -(-p.q()).ln_1p();
        let w = ln_q.abs();
        let s = lambert_moment(ln_q, 0, x, w, c.abs(), t, "ψ_q")?;
        return Ok(EvalResult {
            value: c + ln_q * s.sum,
            err_bound: w * s.tail + rounding_allowance(c.abs() + w * s.abs_sum),
            terms: s.terms,
        });
    }
    let signed = ln_q.powi(n as i32 + 1);
    let w = signed.abs();
    let s = lambert_moment(ln_q, n as u32, x, w, 0.0, t, "ψ_q^(n)")?;
    Ok(EvalResult {
        value: signed * s.sum,
        err_bound: w * s.tail + rounding_allowance(w * s.abs_sum),
        terms: s.terms,
    })
}

/// ψ_q(x) = Γ_q'(x)/Γ_q(x) for x > 0 in either regime.
///
/// For q > 1 this sums the shifted series directly,
/// ψ_q(x) = -ln(q - 1) + ln q [x - 1/2 - Σ_{k≥0} q^{-(k+x)}/(1 - q^{-(k+x)})],
/// which is independent of the 0 < q < 1 engine and so serves as a check on
/// the inversion identity.
pub fn q_digamma(p: &QParam, x: f64, t: &Truncation) -> Result<EvalResult> {
    check_arg(x, "ψ_q")?;
    match p.regime() {
        Regime::SubUnit => sub_unit_psi(p, 0, x, t),
        Regime::SuperUnit => {
            let ln_q = p.ln_q();
            let c1 = -(p.q() - 1.0).ln();
            let c2 = ln_q * (x - 0.5);
            let c_mag = c1.abs() + c2.abs();
            let s = shifted_lambert(-ln_q, x, ln_q, c_mag, t, "ψ_q")?;
            Ok(EvalResult {
                value: c1 + c2 - ln_q * s.sum,
                err_bound: ln_q * s.tail + rounding_allowance(c_mag + ln_q * s.abs_sum),
                terms: s.terms,
            })
        }
    }
}

/// ψ_q^{(n)}(x), 1 ≤ n ≤ [`N_MAX_ORDER`].
///
/// 0 < q < 1: (ln q)^{n+1} Σ_{k≥1} k^n q^{kx}/(1 - q^k).
/// q > 1: through the inversion identity, ψ_q' = ψ_{1/q}' + ln q and
/// ψ_q^{(n)} = ψ_{1/q}^{(n)} for n ≥ 2.
pub fn q_polygamma(n: usize, p: &QParam, x: f64, t: &Truncation) -> Result<EvalResult> {
    if n == 0 || n > N_MAX_ORDER {
        return Err(QError::UnsupportedOrder {
            order: n,
            max: N_MAX_ORDER,
        });
    }
    check_arg(x, "ψ_q^(n)")?;
    match p.regime() {
        Regime::SubUnit => sub_unit_psi(p, n, x, t),
        Regime::SuperUnit => {
            let mut r = sub_unit_psi(&p.inverse()?, n, x, t)?;
            if n == 1 {
                r.value += p.ln_q();
                r.err_bound += rounding_allowance(p.ln_q());
            }
            Ok(r)
        }
    }
}

/// ψ_q^{(order)}(x) with order 0 meaning ψ_q itself.
pub fn psi_order(order: usize, p: &QParam, x: f64, t: &Truncation) -> Result<EvalResult> {
    if order == 0 {
        q_digamma(p, x, t)
    } else {
        q_polygamma(order, p, x, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Truncation {
        Truncation::default()
    }

    #[test]
    fn digamma_at_one_matches_summation_oracle() {
        // -ln(0.5) + ln(0.5) Σ 0.5^k/(1 - 0.5^k) = ln 2 (1 - Σ 1/(2^k - 1))
        let s: f64 = (1..60).map(|k| 1.0 / (2f64.powi(k) - 1.0)).sum();
        let oracle = std::f64::consts::LN_2 * (1.0 - s);
        let p = QParam::new(0.5).unwrap();
        let got = q_digamma(&p, 1.0, &t()).unwrap();
        assert!((got.value - oracle).abs() <= got.err_bound);
        assert!(got.err_bound < 1e-12);
        assert!((got.value + 0.42055).abs() < 5e-5);
    }

    #[test]
    fn digamma_asymptote() {
        let p = QParam::new(0.5).unwrap();
        let v = q_digamma(&p, 30.0, &t()).unwrap().value;
        assert!((v - std::f64::consts::LN_2).abs() < 1e-8);
        assert!(v < std::f64::consts::LN_2);
    }

    #[test]
    fn polygamma_signs_and_decay() {
        let p = QParam::new(0.5).unwrap();
        assert!(q_polygamma(1, &p, 40.0, &t()).unwrap().value.abs() < 1e-10);
        assert!(q_polygamma(1, &p, 1.0, &t()).unwrap().value > 0.0);
        assert!(q_polygamma(2, &p, 1.0, &t()).unwrap().value < 0.0);
    }

    #[test]
    fn trigamma_summation_oracle() {
        // ψ_{0.5}'(1) = (ln 2)^2 Σ k / (2^k - 1)
        let s: f64 = (1..80).map(|k| k as f64 / (2f64.powi(k) - 1.0)).sum();
        let oracle = std::f64::consts::LN_2.powi(2) * s;
        let p = QParam::new(0.5).unwrap();
        let got = q_polygamma(1, &p, 1.0, &t()).unwrap();
        assert!((got.value - oracle).abs() <= got.err_bound);
        assert!(got.err_bound < 1e-12 * oracle);
    }

    #[test]
    fn unsupported_order() {
        let p = QParam::new(0.5).unwrap();
        assert!(matches!(
            q_polygamma(9, &p, 1.0, &t()),
            Err(QError::UnsupportedOrder { order: 9, .. })
        ));
        assert!(q_polygamma(0, &p, 1.0, &t()).is_err());
        assert!(q_polygamma(8, &p, 1.0, &t()).is_ok());
    }

    #[test]
    fn super_unit_half_integer_point() {
        // At x = 3/2 the linear correction vanishes: ψ_2(1.5) = ψ_{1/2}(1.5).
        let two = QParam::new(2.0).unwrap();
        let half = QParam::new(0.5).unwrap();
        let a = q_digamma(&two, 1.5, &t()).unwrap().value;
        let b = q_digamma(&half, 1.5, &t()).unwrap().value;
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn err_bound_within_policy() {
        let t = t();
        for q in [0.1, 0.5, 0.9, 2.0, 5.0] {
            let p = QParam::new(q).unwrap();
            for x in [0.05, 0.7, 3.0, 20.0] {
                let r = q_digamma(&p, x, &t).unwrap();
                assert!(r.err_bound.is_finite() && r.err_bound >= 0.0);
                assert!(r.err_bound < 1e-11 * r.value.abs().max(1.0), "q={q} x={x}");
            }
        }
    }
}
