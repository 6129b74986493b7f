use thiserror::Error;

/// Errors raised by kernel evaluation, the solvers and the command line front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {arg} is outside the domain: {reason}")]
    Domain { arg: &'static str, reason: String },

    #[error("non-finite value while evaluating {what}")]
    NonFinite { what: &'static str },

    #[error("invalid {field}: {reason}")]
    InvalidInput { field: String, reason: String },

    #[error("cannot bracket root of phi(p) = {lambda}: phi saturates at {saturation}")]
    BracketFailure { lambda: f64, saturation: f64 },

    #[error("kernel refused: {0}")]
    Inadmissible(String),

    #[error("contour tail did not converge before |p| reached {reached:e}")]
    NonConvergentTail { reached: f64 },

    #[error("quadrature failed to reach tolerance: {0}")]
    Quadrature(String),

    #[error("implicit coefficient {coefficient} <= 0 at step {step}; refine the mesh")]
    StepSize { step: usize, coefficient: f64 },

    #[error("precision loss: {0}")]
    PrecisionLoss(String),
}

impl Error {
    pub(crate) fn domain(arg: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { arg, reason: reason.into() }
    }

    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidInput { field: field.into(), reason: reason.into() }
    }

    /// True for failures caused by user input rather than by a mathematical refusal.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::InvalidInput { .. } | Error::Domain { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
