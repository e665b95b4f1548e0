use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("specialization kills denominator factor {0}")]
    SpecializationKillsDenominator(String),
    #[error("inhomogeneous bracket operand")]
    InhomogeneousBracket,
    #[error("equal indices: {0} and {0}")]
    EqualIndices(usize),
    #[error("undefined scaled element {element}: factor {factor} vanishes")]
    UndefinedScaledElement { element: String, factor: String },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("{0}")]
    Eval(String),
    #[error("{0} requires g2 mode")]
    RequiresG2(String),
    #[error("g2 mode requires n = 2, got n = {0}")]
    G2RankMismatch(usize),
    #[error("internal consistency: {0}")]
    Consistency(String),
    #[error("invalid json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
