use serde::Serialize;

use crate::error::{QError, Result};

/// Default exclusion radius around q = 1. Inside it the series need
/// O(1/((1-q)x)) terms and the tail bounds lose their bite.
pub const NEAR_ONE_GUARD: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// 0 < q < 1
    SubUnit,
    /// q > 1
    SuperUnit,
}

/// A validated deformation parameter q > 0, q != 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParam {
    q: f64,
    ln_q: f64,
    regime: Regime,
    near_one: bool,
}

impl QParam {
    /// Accepts q > 0 with |q - 1| >= [`NEAR_ONE_GUARD`].
    pub fn new(q: f64) -> Result<Self> {
        Self::build(q, false)
    }

    /// Like [`QParam::new`], but lets q approach 1 arbitrarily closely.
    /// Callers are expected to raise the term cap of their [`Truncation`](super::Truncation).
    pub fn with_near_one(q: f64) -> Result<Self> {
        Self::build(q, true)
    }

    fn build(q: f64, near_one: bool) -> Result<Self> {
        if !q.is_finite() || q <= 0.0 {
            return Err(QError::InvalidParam {
                q,
                reason: "q must be positive and finite",
            });
        }
        if q == 1.0 {
            return Err(QError::InvalidParam {
                q,
                reason: "q = 1 is the classical limit, not a deformation",
            });
        }
        if !near_one && (q - 1.0).abs() < NEAR_ONE_GUARD {
            return Err(QError::InvalidParam {
                q,
                reason: "|q - 1| < 1e-4; enable the near-one override to accept it",
            });
        }
        let ln_q = q.ln();
        if ln_q == 0.0 || !ln_q.is_finite() {
            return Err(QError::InvalidParam {
                q,
                reason: "ln q is not a usable nonzero finite number",
            });
        }
        let regime = if q < 1.0 {
            Regime::SubUnit
        } else {
            Regime::SuperUnit
        };
        Ok(Self {
            q,
            ln_q,
            regime,
            near_one,
        })
    }

    #[inline]
    pub fn q(&self) -> f64 {
        self.q
    }

    #[inline]
    pub fn ln_q(&self) -> f64 {
        self.ln_q
    }

    #[inline]
    pub fn regime(&self) -> Regime {
        self.regime
    }

    #[inline]
    pub fn is_sub_unit(&self) -> bool {
        self.regime == Regime::SubUnit
    }

    pub fn allows_near_one(&self) -> bool {
        self.near_one
    }

    /// The parameter 1/q, carrying over the near-one override.
    pub fn inverse(&self) -> Result<Self> {
        Self::build(1.0 / self.q, self.near_one)
    }

    /// The parameter q², carrying over the near-one override.
    pub fn squared(&self) -> Result<Self> {
        Self::build(self.q * self.q, self.near_one)
    }

    pub(crate) fn require_sub_unit(&self, what: &str) -> Result<()> {
        if self.is_sub_unit() {
            Ok(())
        } else {
            Err(QError::Precondition(format!(
                "{what} requires 0 < q < 1, got q = {}",
                self.q
            )))
        }
    }

    pub(crate) fn require_super_unit(&self, what: &str) -> Result<()> {
        if self.is_sub_unit() {
            Err(QError::Precondition(format!(
                "{what} requires q > 1, got q = {}",
                self.q
            )))
        } else {
            Ok(())
        }
    }
}

/// Series and product truncation policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    rel_tol: f64,
    abs_tol: f64,
    max_terms: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            rel_tol: 1e-13,
            abs_tol: 1e-300,
            max_terms: 10_000_000,
        }
    }
}

impl Truncation {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(QError::InvalidTruncation("rel_tol must be positive"));
        }
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(QError::InvalidTruncation("abs_tol must be positive"));
        }
        if max_terms == 0 {
            return Err(QError::InvalidTruncation("max_terms must be at least 1"));
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_terms,
        })
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Result<Self> {
        Self::new(rel_tol, self.abs_tol, self.max_terms)
    }

    pub fn with_max_terms(self, max_terms: usize) -> Result<Self> {
        Self::new(self.rel_tol, self.abs_tol, max_terms)
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// Acceptable truncation error for a result of magnitude `scale`.
    #[inline]
    pub(crate) fn threshold(&self, scale: f64) -> f64 {
        (self.rel_tol * scale).max(self.abs_tol)
    }
}

/// A series evaluation: value, error bound and number of terms consumed.
///
/// `err_bound` is the analytic tail bound plus a small floating-point
/// allowance proportional to the magnitude of the summed contributions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub err_bound: f64,
    pub terms: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_q() {
        for q in [0.0, -0.5, 1.0, f64::NAN, f64::INFINITY] {
            assert!(QParam::new(q).is_err(), "q = {q}");
        }
    }

    #[test]
    fn near_one_guard_and_override() {
        assert!(QParam::new(0.99995).is_err());
        assert!(QParam::new(1.00005).is_err());
        let p = QParam::with_near_one(0.99995).unwrap();
        assert!(p.allows_near_one());
        assert!(p.inverse().is_ok());
        assert!(QParam::new(0.999).is_ok());
    }

    #[test]
    fn regime_matches_q() {
        assert_eq!(QParam::new(0.3).unwrap().regime(), Regime::SubUnit);
        assert_eq!(QParam::new(3.0).unwrap().regime(), Regime::SuperUnit);
        let inv = QParam::new(4.0).unwrap().inverse().unwrap();
        assert_eq!(inv.regime(), Regime::SubUnit);
        assert_eq!(inv.q(), 0.25);
    }

    #[test]
    fn truncation_validation() {
        assert!(Truncation::new(0.0, 1e-300, 10).is_err());
        assert!(Truncation::new(1e-13, -1.0, 10).is_err());
        assert!(Truncation::new(1e-13, 1e-300, 0).is_err());
        let t = Truncation::default();
        assert_eq!(t.rel_tol(), 1e-13);
        assert_eq!(t.max_terms(), 10_000_000);
        assert_eq!(t.threshold(0.0), 1e-300);
    }
}
