use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd of zeros undefined")]
    GcdOfZeros,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("degenerate equation")]
    DegenerateEquation,
    #[error("bad factorization")]
    BadFactorization,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("syntax error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    /// An exact identity that must hold by construction failed. Always a bug.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
