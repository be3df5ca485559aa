use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("ambiguous interaction source: set either g_tilde or chi3, not both")]
    AmbiguousInteraction,

    #[error("no interaction source: {0}")]
    MissingInteraction(&'static str),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("time step {dt:e} s violates the stability bound (dt * max rate = {product:.3} >= 0.5)")]
    StabilityBound { dt: f64, product: f64 },

    #[error("evolution diverged at step {step}: peak density grew by a factor {growth:.3e}")]
    Diverged { step: usize, growth: f64 },

    #[error("relaxation did not converge after {steps} steps (last relative energy change {last_change:e})")]
    NotConverged { steps: usize, last_change: f64 },

    #[error("radial quadrature did not converge: achieved relative tolerance {achieved:e}, requested {requested:e}")]
    QuadratureNotConverged { achieved: f64, requested: f64 },

    #[error("grid under-resolved along {axis}: spacing {spacing:e} exceeds a third of the resolution {resolution:e}")]
    UnderResolved {
        axis: &'static str,
        spacing: f64,
        resolution: f64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("malformed file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
