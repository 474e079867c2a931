use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("marked-point count must be at least 3, got {0}")]
    InvalidPointCount(usize),
    #[error("invalid curve class: {0}")]
    InvalidCurve(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded below")]
    Unbounded,
    #[error("unknown class name `{0}`")]
    BadName(String),
    #[error("index {index} out of range for n = {n}")]
    BadIndex { index: usize, n: usize },
    #[error("class does not lie in the span of A[n-1] and A[n]")]
    NotInSpan,
    #[error("discriminant needs degree at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("discriminant convention ratio is not constant: {first} vs {second}")]
    InconsistentRatio { first: String, second: String },
    #[error("form has vanishing discriminant")]
    NonGenericForm,
    #[error("need at least 3 data points with N >= 1, got {0}")]
    InsufficientData(usize),
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(String),
    #[error("invalid counting policy: {0}")]
    InvalidPolicy(String),
    #[error("invalid count series: {0}")]
    InvalidSeries(String),
    #[error("parse error: {0}")]
    Parse(String),
}
