//! Error-bounded evaluation of Γ_q, ln Γ_q, ψ_q and ψ_q^{(n)} for 0 < q < 1
//! and q > 1.
//!
//! Every series evaluation returns an [`EvalResult`] whose `err_bound` comes
//! from an analytic tail majorant (geometric, or polynomial times geometric
//! for the polygamma moments). Derivatives for q > 1 are routed through the
//! inversion identity so there is a single polygamma engine; the q > 1
//! digamma and log-gamma are summed directly so the identities in
//! [`identities`] compare two independent routes.

mod digamma;
mod gamma;
pub mod identities;
mod param;
pub(crate) mod series;

pub use digamma::{psi_order, q_digamma, q_polygamma, N_MAX_ORDER};
pub use gamma::{ln_q_gamma, q_bracket, q_gamma};
pub use identities::{
    digamma_inversion_residual, digamma_recurrence_residual, functional_equation_residual,
    gamma_inversion_residual, IdentityResidual,
};
pub use param::{EvalResult, QParam, Regime, Truncation, NEAR_ONE_GUARD};
