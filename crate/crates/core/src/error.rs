use thiserror::Error;

use crate::darboux::ViolationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A bad argument: non-positive tolerance, step or ħ, malformed grid, and so on.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The function being evaluated produced a non-finite value at `x`.
    #[error("non-finite value of {what} at x = {x}")]
    Domain { what: &'static str, x: f64 },

    /// `x` lies outside the validated domain of a family.
    #[error("x = {x} lies outside the validated domain [{lo}, {hi}]")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },

    /// A pole of an action or of `I0 + lambda`.
    #[error("singular point of {what} at x = {x}")]
    Singularity { what: &'static str, x: f64 },

    /// A zero of a zero mode, where its log-derivative is undefined.
    #[error("zero-mode node at x = {x}")]
    Node { x: f64 },

    #[error("result of {what} is not representable at u = {u}")]
    Overflow { what: &'static str, u: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("entropy normalization failed: {0}")]
    Normalization(String),

    #[error("insufficient domain: {0}")]
    InsufficientDomain(String),

    #[error("{0}")]
    LambdaViolation(Box<ViolationReport>),

    #[error("infinite temperature: x = 0")]
    InfiniteTemperature,
}

pub(crate) fn check_hbar(hbar: f64) -> Result<()> {
    if hbar.is_finite() && hbar > 0.0 {
        Ok(())
    } else {
        Err(Error::Argument(format!("hbar must be finite and positive, got {hbar}")))
    }
}
