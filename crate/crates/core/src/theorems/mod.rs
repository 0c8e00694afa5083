//! One verifier per monotonicity theorem and inequality about Γ_q and ψ_q.
//!
//! Every verifier returns a [`VerifyReport`]. Products and powers of Γ_q are
//! compared in log space; inequality checks use a one-sided slack `tol`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::QError;
use crate::qcore::{Regime, Truncation};
use crate::qderiv::DEFAULT_SIGN_TOL;

mod digamma_claims;
mod g_beta;
mod gamma_claims;
mod ratio;
mod report;

pub use digamma_claims::{
    verify_ineq_010, verify_ineq_1, verify_inv_digamma_lcm, verify_remark_ineq,
    InvDigammaProvider, ZERO_MARGIN,
};
pub use g_beta::{
    beta_star, g_beta_log_deriv, ln_g_beta, phi_series_coefficient, psi_duplication_residual,
    verify_g_beta_lcm, verify_phi_coefficients, verify_psi_duplication, GBetaProvider,
};
pub use gamma_claims::{
    verify_gamma_lcm_and_superadd, verify_gamma_lcm_and_superadd_pairs, LnGammaProvider,
};
pub use ratio::{
    ineq_555_log_middle, ineq_555_slope, verify_ineq_555, verify_ineq_666,
    verify_theorem_ratio_lcm,
};
pub use report::{Branch, CheckPoint, GridSummary, Param, VerifyReport, TIGHT_MARGIN};

pub use crate::qderiv::RatioSpec;

/// Stable identifiers of the verifiable claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ClaimId {
    #[serde(rename = "t31-ratio-lcm")]
    RatioLcm,
    #[serde(rename = "c-555")]
    Ineq555,
    #[serde(rename = "c-666")]
    Ineq666,
    #[serde(rename = "g-beta-lcm")]
    GBetaLcm,
    #[serde(rename = "phi-coeff")]
    PhiCoeff,
    #[serde(rename = "t34-inv-psi")]
    InvPsiLcm,
    #[serde(rename = "c-ineq-1")]
    Ineq1,
    #[serde(rename = "c-ineq-010")]
    Ineq010,
    #[serde(rename = "remark-harmonic")]
    RemarkHarmonic,
    #[serde(rename = "gamma-lcm-superadd")]
    GammaLcmSuperadd,
    #[serde(rename = "psi-duplication")]
    PsiDuplication,
}

impl ClaimId {
    pub const ALL: [ClaimId; 11] = [
        ClaimId::RatioLcm,
        ClaimId::Ineq555,
        ClaimId::Ineq666,
        ClaimId::GBetaLcm,
        ClaimId::PhiCoeff,
        ClaimId::InvPsiLcm,
        ClaimId::Ineq1,
        ClaimId::Ineq010,
        ClaimId::RemarkHarmonic,
        ClaimId::GammaLcmSuperadd,
        ClaimId::PsiDuplication,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClaimId::RatioLcm => "t31-ratio-lcm",
            ClaimId::Ineq555 => "c-555",
            ClaimId::Ineq666 => "c-666",
            ClaimId::GBetaLcm => "g-beta-lcm",
            ClaimId::PhiCoeff => "phi-coeff",
            ClaimId::InvPsiLcm => "t34-inv-psi",
            ClaimId::Ineq1 => "c-ineq-1",
            ClaimId::Ineq010 => "c-ineq-010",
            ClaimId::RemarkHarmonic => "remark-harmonic",
            ClaimId::GammaLcmSuperadd => "gamma-lcm-superadd",
            ClaimId::PsiDuplication => "psi-duplication",
        }
    }

    /// Whether the claim is stated for parameters in `regime`.
    pub fn supports(&self, regime: Regime) -> bool {
        match self {
            ClaimId::Ineq666
            | ClaimId::GBetaLcm
            | ClaimId::PhiCoeff
            | ClaimId::RemarkHarmonic
            | ClaimId::PsiDuplication => regime == Regime::SubUnit,
            _ => true,
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self, QError> {
        ClaimId::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| QError::Precondition(format!("unknown claim id {s:?}")))
    }
}

/// Slack and truncation shared by all verifiers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub tol: f64,
    pub trunc: Truncation,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_SIGN_TOL,
            trunc: Truncation::default(),
        }
    }
}

impl VerifyOptions {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}
