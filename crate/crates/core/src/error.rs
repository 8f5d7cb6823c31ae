use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the function's domain.
    #[error("{func}: argument out of domain ({detail})")]
    Domain { func: &'static str, detail: String },

    /// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
    #[error("quadrature did not converge after {subdivisions} subdivisions (estimated error {error:e})")]
    NonConvergence { subdivisions: usize, error: f64 },

    /// An integrand or intermediate produced NaN or an infinity.
    #[error("non-finite value encountered at x = {at:e}")]
    NonFinite { at: f64 },

    /// Distribution parameters violate their invariants.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The (name, family) pair is not one of the tabulated special cases.
    #[error("no preset named `{name}` in the {family} family")]
    UnknownPreset { name: String, family: String },

    /// A system configuration field is out of range.
    #[error("invalid config field `{field}`: {reason}")]
    Config { field: &'static str, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        func,
        detail: detail.into(),
    }
}
