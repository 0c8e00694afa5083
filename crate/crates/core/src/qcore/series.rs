//! Summation engines for the Lambert-type and log-product series behind Γ_q
//! and ψ_q. Every engine stops on an analytic tail majorant, never on the
//! size of the last term alone.

use super::param::Truncation;
use crate::error::{QError, Result};

/// Floating-point allowance added to truncation bounds: a few ulps of the
/// magnitude of everything that went into the result.
#[inline]
pub(crate) fn rounding_allowance(scale: f64) -> f64 {
    16.0 * f64::EPSILON * scale
}

/// Neumaier-compensated accumulator that also tracks Σ|term|.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Accumulator {
    sum: f64,
    comp: f64,
    abs: f64,
}

impl Accumulator {
    #[inline]
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
        self.abs += v.abs();
    }

    #[inline]
    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }

    #[inline]
    pub(crate) fn abs_sum(&self) -> f64 {
        self.abs
    }
}

/// ln(1 - e^a) for a < 0, accurate at both ends.
#[inline]
pub(crate) fn ln_one_minus_exp(a: f64) -> f64 {
    debug_assert!(a < 0.0);
    if a > -std::f64::consts::LN_2 {
        (-a.exp_m1()).ln()
    } else {
        (-a.exp()).ln_1p()
    }
}

/// e^a / (1 - e^a) for a < 0.
#[inline]
pub(crate) fn exp_over_one_minus_exp(a: f64) -> f64 {
    a.exp() / -a.exp_m1()
}

/// A truncated positive series.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum {
    pub sum: f64,
    pub abs_sum: f64,
    pub tail: f64,
    pub terms: usize,
}

/// Σ_{k≥1} k^n b^{kx} / (1 - b^k) for 0 < b < 1, given `ln_b < 0`.
///
/// With T_k the k-th term, T_{k+1}/T_k ≤ ((k+1)/k)^n b^x, so once
/// ρ_k = ((k+1)/k)^n b^x < 1 the tail from k on is at most T_k/(1 - ρ_k).
/// The loop stops when `weight · tail` falls below the truncation threshold
/// of `constant + weight · Σ`, the magnitude of the caller's final result.
pub(crate) fn lambert_moment(
    ln_b: f64,
    n: u32,
    x: f64,
    weight: f64,
    constant: f64,
    t: &Truncation,
    what: &'static str,
) -> Result<SeriesSum> {
    debug_assert!(ln_b < 0.0 && x > 0.0);
    let step = ln_b * x;
    let ratio_base = step.exp();
    let mut acc = Accumulator::default();
    let mut k: usize = 1;
    loop {
        let kf = k as f64;
        let term = kf.powi(n as i32) * (kf * step).exp() / -(kf * ln_b).exp_m1();
        let rho = ((kf + 1.0) / kf).powi(n as i32) * ratio_base;
        if rho < 1.0 {
            let tail = term / (1.0 - rho);
            let scale = constant + weight * acc.abs_sum();
            if weight * tail <= t.threshold(scale) {
                return Ok(SeriesSum {
                    sum: acc.value(),
                    abs_sum: acc.abs_sum(),
                    tail,
                    terms: k - 1,
                });
            }
        }
        if k > t.max_terms() {
            return Err(QError::NonConvergent {
                what,
                max_terms: t.max_terms(),
            });
        }
        acc.add(term);
        k += 1;
    }
}

/// Σ_{k≥0} b^{k+x} / (1 - b^{k+x}) for 0 < b < 1 (the shifted Lambert form).
///
/// Consecutive terms shrink by at least a factor b, so the tail from k on is
/// at most T_k/(1 - b).
pub(crate) fn shifted_lambert(
    ln_b: f64,
    x: f64,
    weight: f64,
    constant: f64,
    t: &Truncation,
    what: &'static str,
) -> Result<SeriesSum> {
    debug_assert!(ln_b < 0.0 && x > 0.0);
    let one_minus_b = -ln_b.exp_m1();
    let mut acc = Accumulator::default();
    let mut k: usize = 0;
    loop {
        let term = exp_over_one_minus_exp((k as f64 + x) * ln_b);
        let tail = term / one_minus_b;
        let scale = constant + weight * acc.abs_sum();
        if weight * tail <= t.threshold(scale) {
            return Ok(SeriesSum {
                sum: acc.value(),
                abs_sum: acc.abs_sum(),
                tail,
                terms: k,
            });
        }
        if k >= t.max_terms() {
            return Err(QError::NonConvergent {
                what,
                max_terms: t.max_terms(),
            });
        }
        acc.add(term);
        k += 1;
    }
}

/// Σ_{j≥0} [ln(1 - b^{j+1}) - ln(1 - b^{j+x})] for 0 < b < 1: the logarithm
/// of the infinite product in the q-gamma definition.
///
/// By the mean value theorem each term is at most b^j |b - b^x| / (1 - b^{j+m})
/// in magnitude with m = min(1, x), so the tail from J on is bounded by
/// b^J |b - b^x| / ((1 - b)(1 - b^{J+m})).
pub(crate) fn log_product(
    ln_b: f64,
    x: f64,
    constant: f64,
    t: &Truncation,
    what: &'static str,
) -> Result<SeriesSum> {
    debug_assert!(ln_b < 0.0 && x > 0.0);
    let m = x.min(1.0);
    // |b - b^x| = b |1 - b^{x-1}|
    let gap = ln_b.exp() * ((x - 1.0) * ln_b).exp_m1().abs();
    let one_minus_b = -ln_b.exp_m1();
    let mut acc = Accumulator::default();
    let mut j: usize = 0;
    loop {
        let jf = j as f64;
        let tail = (jf * ln_b).exp() * gap / (one_minus_b * -((jf + m) * ln_b).exp_m1());
        let scale = constant + acc.abs_sum();
        if tail <= t.threshold(scale) {
            return Ok(SeriesSum {
                sum: acc.value(),
                abs_sum: acc.abs_sum(),
                tail,
                terms: j,
            });
        }
        if j >= t.max_terms() {
            return Err(QError::NonConvergent {
                what,
                max_terms: t.max_terms(),
            });
        }
        let term = ln_one_minus_exp((jf + 1.0) * ln_b) - ln_one_minus_exp((jf + x) * ln_b);
        acc.add(term);
        j += 1;
    }
}
