use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid slope: {0}")]
    InvalidAlpha(String),

    #[error("sqrt({0}) is rational; a quadratic surd needs a non-square radicand")]
    PerfectSquare(i64),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("undefined slope: the empty word has no slope")]
    UndefinedSlope,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("factor scan for length {n} stopped after {scanned} letters with {found} of {expected} factors")]
    FactorScanExhausted {
        n: usize,
        scanned: usize,
        found: usize,
        expected: usize,
    },

    #[error("product {left} * {right} has degree {degree}, above the context cap {cap}")]
    DegreeOverflow {
        left: String,
        right: String,
        degree: usize,
        cap: usize,
    },

    #[error("brute-force oracle refused: {0}")]
    OracleTooLarge(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no certificate up to length {max_n}: the factor sets never became disjoint")]
    NoCertificate { max_n: usize },
    #[error("factor sets are disjoint but the intersection has c_{degree} = {c_n}")]
    CertificateRefuted { degree: usize, c_n: usize },
}
