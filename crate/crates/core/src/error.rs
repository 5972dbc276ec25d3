use thiserror::Error;

/// Errors raised by the estimation, diagnostics and I/O layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("design is rank deficient; dependent columns: {}", .0.join(", "))]
    RankDeficient(Vec<String>),

    #[error("response has zero total sum of squares")]
    DegenerateResponse,

    #[error("column `{0}` is an exact linear combination of the other predictors")]
    ExactCollinearity(String),

    #[error("column `{0}` has zero variance")]
    ConstantColumn(String),

    #[error("invalid design: n = {n}, k = {k} (need n > k >= 2)")]
    InvalidDesign { n: usize, k: usize },

    #[error("design matrix is empty")]
    EmptyDesign,

    #[error("probability {0} is outside (0, 1)")]
    InvalidProbability(f64),

    #[error("gamma {0} must lie in [0, 1)")]
    InvalidGamma(f64),

    #[error("invalid dimensions: {0}")]
    InvalidDims(String),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("models were fitted to different response vectors")]
    MixedResponse,

    #[error("CSV parse error at line {line}, column {col}: {message}")]
    ParseError {
        line: u64,
        col: usize,
        message: String,
    },

    #[error("response column `{0}` not found in header")]
    MissingResponse(String),

    #[error("non-numeric cell at line {line}, column {col}: `{value}`")]
    NonNumericCell { line: u64, col: usize, value: String },

    #[error("too few rows: n = {n} but the model needs more than k = {k}")]
    TooFewRows { n: usize, k: usize },

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
