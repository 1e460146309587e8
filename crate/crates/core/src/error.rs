//! Error type shared by all modules of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inversion (or a negative power) of a series whose constant term is zero.
    #[error("series is not invertible: constant term is zero")]
    NotInvertible,

    /// A series operation that constrains the constant term was fed the wrong one.
    #[error("invalid constant term: expected {expected}, found {found}")]
    InvalidConstantTerm {
        expected: &'static str,
        found: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// No rational function within the requested degree bounds matches the series.
    #[error("no rational function with degrees <= ({num_deg}, {den_deg}) matches the series")]
    NoMatch { num_deg: usize, den_deg: usize },

    /// The series does not carry enough coefficients for the requested reconstruction.
    #[error("series order {available} is too small: the degree bounds need {needed} coefficients")]
    InsufficientOrder { needed: usize, available: usize },

    #[error("profile is not weakly decreasing: {0:?}")]
    NonMonotoneProfile(Vec<u32>),

    /// The boxed-count difference was not divisible by the expected power of q.
    /// Reaching this indicates a bug: the divisibility is guaranteed.
    #[error("pi(k,l,{n}) - pi(k,l,{}) is not divisible by q^{n}", n - 1)]
    DivisibilityFailure { n: u32 },
}
