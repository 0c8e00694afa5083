//! q-gamma, q-digamma and q-polygamma functions for 0 < q < 1 and q > 1,
//! the zero of ψ_q, and numerical verifiers for logarithmic complete
//! monotonicity claims built on them.

pub mod error;
pub mod qcore;
pub mod qderiv;
pub mod qroots;
pub mod theorems;

pub use error::{QError, Result};
pub use qcore::{EvalResult, QParam, Regime, Truncation};
pub use qderiv::{LogDerivProvider, OrderRange, RatioSpec, Spacing};
pub use qroots::ZeroResult;
pub use theorems::{ClaimId, VerifyOptions, VerifyReport};
