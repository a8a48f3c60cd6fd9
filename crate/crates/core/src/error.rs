use thiserror::Error;

/// Errors raised by the library. Variants map onto the CLI exit-code table
/// through [`Error::is_validation`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial must have degree at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is reducible over the rationals: {0}")]
    Reducible(String),
    #[error("polynomial vanishes modulo {0}")]
    VanishesModP(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("root isolation did not converge within {0} bits of precision")]
    PrecisionExhausted(u32),
    #[error("could not isolate a unique factor for the designated root")]
    AmbiguousFactor,
    #[error("height comparison undecided at precision budget 2^-{0}")]
    Undecided(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{value} is not squarefree")]
    NotSquarefreeInteger { value: String },
    #[error("{gen} is not coprime to modulus {modulus}")]
    NotCoprime { gen: String, modulus: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by invalid user input (CLI exit code 3).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::DegreeTooSmall { .. }
                | Error::ZeroPolynomial
                | Error::NotPrime(_)
                | Error::NotSquarefree
                | Error::Reducible(_)
                | Error::InvalidArgument(_)
                | Error::NotSquarefreeInteger { .. }
                | Error::NotCoprime { .. }
                | Error::Precondition(_)
                | Error::Parse(_)
        )
    }

    /// Stable numeric code, shared with the C interface.
    pub fn code(&self) -> i32 {
        match self {
            Error::DegreeTooSmall { .. } => 10,
            Error::ZeroPolynomial => 11,
            Error::NotPrime(_) => 12,
            Error::NotSquarefree => 13,
            Error::Reducible(_) => 14,
            Error::VanishesModP(_) => 15,
            Error::DivisionByZero => 16,
            Error::FieldMismatch => 17,
            Error::PrecisionExhausted(_) => 18,
            Error::AmbiguousFactor => 19,
            Error::Undecided(_) => 20,
            Error::InvalidArgument(_) => 21,
            Error::NotSquarefreeInteger { .. } => 22,
            Error::NotCoprime { .. } => 23,
            Error::Precondition(_) => 24,
            Error::Consistency(_) => 25,
            Error::Parse(_) => 26,
            Error::Io(_) => 27,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
