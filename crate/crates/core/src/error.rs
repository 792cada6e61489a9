use thiserror::Error;

/// Errors raised by the computations in this crate.
///
/// Several variants are internal consistency assertions: they can only fire
/// if a formula was transcribed wrongly or an input table was tampered with.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial division is not exact (nonzero remainder of degree {remainder_degree})")]
    NonExactDivision { remainder_degree: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("series has zero constant term and is not invertible")]
    NotAUnit,

    #[error("series does not truncate to a polynomial of degree {expected_degree}: coefficient of t^{degree} is nonzero")]
    NonPolynomialResult {
        expected_degree: usize,
        degree: usize,
    },

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("need moments up to index {needed}, only {available} supplied")]
    InsufficientMoments { needed: usize, available: usize },

    #[error("degenerate moments: L(p_{k}^2) = 0")]
    DegenerateMoments { k: usize },

    #[error("three-term recurrence does not reproduce p_{k}")]
    RecurrenceMismatch { k: usize },

    #[error("continued fraction disagrees with moment series at order {order}")]
    MatchFailure { order: usize },

    #[error("Hankel kernel for n = {n} has dimension {dimension}, expected 1")]
    KernelDimension { n: u32, dimension: usize },

    #[error("r + 2s = {got} but the top degree is {expected}")]
    DegreeMismatch { got: i64, expected: i64 },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("monomial {0} is not reducible to the basis")]
    NotReducible(String),

    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
