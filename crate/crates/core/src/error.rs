use thiserror::Error;

/// Errors raised by evaluation, root finding and claim verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("invalid deformation parameter q = {q}: {reason}")]
    InvalidParam { q: f64, reason: &'static str },

    #[error("invalid truncation policy: {0}")]
    InvalidTruncation(&'static str),

    #[error("{what} is not defined at x = {x}")]
    Domain { what: &'static str, x: f64 },

    #[error("series for {what} did not meet its tail bound within {max_terms} terms")]
    NonConvergent { what: &'static str, max_terms: usize },

    #[error("order {order} is outside the supported range 1..={max}")]
    UnsupportedOrder { order: usize, max: usize },

    #[error("ln Γ_q = {ln_value} is outside the representable exponent range")]
    Overflow { ln_value: f64 },

    #[error("no sign change of ψ_q on [{lo}, {hi}]: ψ_q(lo) = {f_lo}, ψ_q(hi) = {f_hi}")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("identity gate failed: {0}")]
    Gate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, QError>;
