use qfun::qcore::{q_digamma, QParam, Truncation};
use qfun::qroots::*;

const GRID_Q: [f64; 11] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 2.0, 5.0];

#[test]
fn zero_inside_unit_interval() {
    let t = Truncation::default();
    for q in GRID_Q {
        let p = QParam::new(q).unwrap();
        let z = digamma_zero(&p, DEFAULT_ROOT_TOL).unwrap();
        assert!(z.x0 > 1.0 && z.x0 < 2.0 && z.residual <= 1e-12, "q={q} {z:?}");
        for i in 1..20 {
            let left = z.x0 * i as f64 / 20.0;
            assert!(q_digamma(&p, left, &t).unwrap().value < 0.0, "q={q} x={left}");
            let right = z.x0 + 0.05 * i as f64 * i as f64;
            assert!(q_digamma(&p, right, &t).unwrap().value > 0.0, "q={q} x={right}");
        }
    }
}

#[test]
fn classical_limits() {
    let p = QParam::new(0.999).unwrap();
    let t = Truncation::default().with_max_terms(50_000_000).unwrap();
    let z = digamma_zero_with(&p, DEFAULT_ROOT_TOL, &t).unwrap();
    assert!((z.x0 - 1.4616).abs() <= 5e-3, "{z:?}");
    let p = QParam::with_near_one(0.9999).unwrap();
    let g = q_euler_mascheroni(&p, &t).unwrap();
    assert!((g - 0.5772).abs() <= 1e-2, "{g}");
}

#[test]
fn euler_constant_positive() {
    let t = Truncation::default();
    for q in [0.05, 0.3, 0.6, 0.95] {
        assert!(q_euler_mascheroni(&QParam::new(q).unwrap(), &t).unwrap() > 0.0);
    }
}

#[test]
fn harmonic_monotone_and_limit() {
    let t = Truncation::default();
    for q in [0.2, 0.5, 0.8] {
        let p = QParam::new(q).unwrap();
        let mut prev = 0.0;
        // up to where the next term is still resolvable in f64
        let last = (1e-15f64.ln() / q.ln()) as usize;
        for n in 1..=last {
            let h = q_harmonic(n, &p).unwrap();
            assert!(h > prev, "q={q} n={n}");
            prev = h;
        }
        // ψ_q(1) = -ln(1-q) + ln q Σ q^k/(1-q^k)
        let total = (q_digamma(&p, 1.0, &t).unwrap().value + (1.0 - q).ln()) / p.ln_q();
        let h = q_harmonic(2000, &p).unwrap();
        assert!((h - total).abs() <= 1e-12 * total, "q={q}: {h} vs {total}");
    }
}

#[test]
fn remark_identity() {
    let t = Truncation::default();
    for q in [0.2, 0.5, 0.8] {
        let p = QParam::new(q).unwrap();
        let g = q_euler_mascheroni(&p, &t).unwrap();
        for n in 1..=20 {
            let rhs = p.ln_q() / (1.0 - q) * g - p.ln_q() * q_harmonic(n, &p).unwrap();
            let lhs = q_digamma(&p, n as f64 + 1.0, &t).unwrap().value;
            assert!((lhs - rhs).abs() <= 1e-10, "q={q} n={n}");
        }
    }
}
