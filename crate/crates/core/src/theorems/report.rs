use serde::Serialize;

use super::ClaimId;
use crate::error::{QError, Result};
use crate::qderiv::{CMReport, OrderRange};

/// Margins below this (but not below -tol) are flagged as tight.
pub const TIGHT_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Param {
    pub name: String,
    pub value: f64,
}

impl Param {
    pub fn new(name: impl Into<String>, value: f64) -> Self {
        Self {
            name: name.into(),
            value,
        }
    }
}

/// One evaluated check: the quantity examined and its slack.
///
/// For LCM claims `value` is (ln f)^{(n)}(x) and `margin` is (-1)^n times it.
/// For inequalities `value` is the log-space quantity being bounded and
/// `margin` is the one-sided slack (negative means violated).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckPoint {
    pub n_order: usize,
    pub x: f64,
    /// Point-specific coordinates beyond x (for example y, or x1).
    pub extra: Vec<Param>,
    pub value: f64,
    pub margin: f64,
}

impl CheckPoint {
    pub fn new(n_order: usize, x: f64, value: f64, margin: f64) -> Self {
        Self {
            n_order,
            x,
            extra: Vec::new(),
            value,
            margin,
        }
    }

    pub fn with_extra(mut self, name: &str, value: f64) -> Self {
        self.extra.push(Param::new(name, value));
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSummary {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub orders: Option<OrderRange>,
}

impl GridSummary {
    pub fn of(xs: &[f64], orders: Option<OrderRange>) -> Self {
        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self {
            lo,
            hi,
            points: xs.len(),
            orders,
        }
    }
}

/// Which direction of an "if and only if" a ratio verification exercised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Balanced with α ≥ 0: LCM is claimed.
    Sufficiency,
    /// Unbalanced or α < 0 with 0 < q < 1: a violation is claimed to exist.
    Necessity,
    /// Unbalanced with q > 1: no claim is made either way.
    Uncovered,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub claim_id: ClaimId,
    pub q: f64,
    pub params: Vec<Param>,
    pub grid: GridSummary,
    pub branch: Option<Branch>,
    /// What the claim predicts for `passed`, where it predicts anything.
    pub expected_pass: Option<bool>,
    pub passed: bool,
    pub tol: f64,
    pub worst_margin: f64,
    pub tight: bool,
    pub checked: usize,
    /// Points dropped because they fall outside the claim's hypotheses.
    pub excluded: usize,
    pub worst: CheckPoint,
    pub counterexample: Option<CheckPoint>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    /// Whether the observed outcome matches the claim's prediction.
    pub fn consistent_with_claim(&self) -> Option<bool> {
        self.expected_pass.map(|e| e == self.passed)
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|p| p.name == name).map(|p| p.value)
    }
}

/// Accumulates check points in evaluation order and assembles the report.
#[derive(Debug)]
pub(crate) struct MarginTracker {
    tol: f64,
    worst: Option<CheckPoint>,
    first_violation: Option<CheckPoint>,
    checked: usize,
    excluded: usize,
}

impl MarginTracker {
    pub(crate) fn new(tol: f64) -> Self {
        Self {
            tol,
            worst: None,
            first_violation: None,
            checked: 0,
            excluded: 0,
        }
    }

    pub(crate) fn record(&mut self, pt: CheckPoint) {
        self.checked += 1;
        if self.first_violation.is_none() && pt.margin < -self.tol {
            self.first_violation = Some(pt.clone());
        }
        if self.worst.as_ref().map_or(true, |w| pt.margin < w.margin) {
            self.worst = Some(pt);
        }
    }

    pub(crate) fn exclude(&mut self) {
        self.excluded += 1;
    }

    pub(crate) fn absorb(&mut self, cm: &CMReport) {
        let to_point = |s: &crate::qderiv::DerivSample| CheckPoint::new(s.order, s.x, s.value, s.margin());
        let checked = cm.grid.len() * (cm.orders.hi - cm.orders.lo + 1);
        if self.first_violation.is_none() {
            self.first_violation = cm.violation.as_ref().map(to_point);
        }
        if self.worst.as_ref().map_or(true, |w| cm.worst_margin < w.margin) {
            self.worst = Some(to_point(&cm.worst));
        }
        self.checked += checked;
    }

    pub(crate) fn finish(self, head: ReportHead) -> Result<VerifyReport> {
        let worst = self.worst.ok_or_else(|| {
            QError::Precondition(format!(
                "{}: no admissible points to check ({} excluded)",
                head.claim_id.as_str(),
                self.excluded
            ))
        })?;
        let passed = self.first_violation.is_none();
        Ok(VerifyReport {
            claim_id: head.claim_id,
            q: head.q,
            params: head.params,
            grid: head.grid,
            branch: head.branch,
            expected_pass: head.expected_pass,
            passed,
            tol: self.tol,
            worst_margin: worst.margin,
            tight: passed && worst.margin < TIGHT_MARGIN,
            checked: self.checked,
            excluded: self.excluded,
            worst,
            counterexample: self.first_violation,
            notes: head.notes,
        })
    }
}

pub(crate) struct ReportHead {
    pub claim_id: ClaimId,
    pub q: f64,
    pub params: Vec<Param>,
    pub grid: GridSummary,
    pub branch: Option<Branch>,
    pub expected_pass: Option<bool>,
    pub notes: Vec<String>,
}

impl ReportHead {
    pub(crate) fn new(claim_id: ClaimId, q: f64, grid: GridSummary) -> Self {
        Self {
            claim_id,
            q,
            params: Vec::new(),
            grid,
            branch: None,
            expected_pass: Some(true),
            notes: Vec::new(),
        }
    }

    pub(crate) fn param(mut self, name: &str, value: f64) -> Self {
        self.params.push(Param::new(name, value));
        self
    }

    pub(crate) fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}
