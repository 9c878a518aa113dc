use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no root below {limit} for the characteristic equation")]
    NoRoot { limit: f64 },

    #[error("Newton solve did not converge after {steps} steps (residual {residual:e})")]
    NoConvergence { steps: usize, residual: f64 },

    #[error("wave speed {0} is not positive")]
    NonPositiveSpeed(f64),

    #[error("tail fit needs at least {needed} nodes, found {found}")]
    FitFailure { needed: usize, found: usize },

    #[error("obstacle is not convex")]
    NotConvex,

    #[error("obstacle leaves the half-plane x1 <= 0")]
    PlacementViolation,

    #[error("obstacle is closer than {margin} to the box boundary")]
    TouchesBoundary { margin: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("time step {dt} exceeds the stability ceiling {max}")]
    TimeStep { dt: f64, max: f64 },

    #[error("contraction condition violated: (2 + max f') * t = {0} >= 1")]
    Contraction(f64),

    #[error("argument outside the validity window: {0}")]
    Domain(String),

    #[error("profile is not monotone")]
    DegenerateProfile,

    #[error("i/o: {0}")]
    Io(String),

    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
