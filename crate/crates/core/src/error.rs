use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A constructor argument violated its type invariant. `field` names the offending field.
    #[error("{field}: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// An argument lies outside the domain of the evaluated function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A transmitter placement violates the feasibility constraints of the placement problem.
    #[error("infeasible placement (a = {a}, b = {b}): violates {constraint}")]
    Infeasible { a: f64, b: f64, constraint: &'static str },

    #[error("configuration error: {0}")]
    Configuration(String),

    /// Adaptive quadrature ran out of its evaluation budget.
    #[error("quadrature did not converge after {evaluations} evaluations (estimate {estimate}, error bound {error_bound})")]
    NumericalFailure { estimate: f64, error_bound: f64, evaluations: usize },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { field, reason: reason.into() }
    }
}
