use thiserror::Error;

/// Errors raised by the exact-arithmetic and analysis layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is reducible; factor {factor}")]
    Reducible { factor: String },
    #[error("root enclosures could not be certified within the iteration budget")]
    PrecisionExhausted,
    #[error("operands belong to different rings (dimension {left} vs {right})")]
    ContextMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisorZero,
    #[error("modulus is a zero divisor; the quotient ring is infinite")]
    ZeroDivisorModulus,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("embedding index {index} out of range for degree {degree}")]
    EmbeddingOutOfRange { index: usize, degree: usize },
    #[error("base does not have modulus greater than one in the chosen embedding")]
    BaseNotGreaterThanOne,
    #[error("alphabet does not contain zero")]
    ZeroMissing,
    #[error("alphabet contains duplicate digit {digit}")]
    DuplicateDigit { digit: String },
    #[error("base is not expanding")]
    BaseNotExpanding,
    #[error("digit index {index} is not valid for an alphabet of size {size}")]
    DigitIndexOutOfRange { index: usize, size: usize },
    #[error("digit {digit} is not in the input alphabet")]
    DigitNotInInputAlphabet { digit: String },
    #[error("rule input alphabet does not contain A+A; missing {digit}")]
    InputAlphabetTooSmall { digit: String },
    #[error("table or certificate shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("rule maps the zero window to a nonzero digit")]
    ZeroWindowNonZero,
    #[error("target embedding does not have modulus greater than one")]
    TargetEmbeddingNotGreaterThanOne,
    #[error("{file}: byte {offset}: {message}")]
    Parse {
        file: String,
        offset: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
