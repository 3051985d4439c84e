use thiserror::Error;

/// Errors raised by generation, fitting, testing and experiment orchestration.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("insufficient data: {n_obs} observations for {n_params} parameters")]
    InsufficientData { n_obs: usize, n_params: usize },

    #[error("design matrix is rank deficient (column {column})")]
    RankDeficient { column: usize },

    #[error("fits are not a nested restricted/unrestricted pair: {0}")]
    InvalidPair(String),

    #[error("non-positive signal variance {0}")]
    NonPositiveVariance(f64),

    #[error("generated value {value} at t={t} exceeds magnitude bound {bound}")]
    Divergent { t: usize, value: f64, bound: f64 },

    #[error("{value} dB is not on the {axis} axis of the grid")]
    OffGrid { axis: char, value: f64 },

    #[error("{failed} of {attempted} iterations were rank deficient")]
    TooManyDegenerate { failed: usize, attempted: usize },

    #[error("zero iteration count")]
    ZeroIterations,

    /// Malformed input file. `row` counts data rows from 1, header excluded.
    #[error("row {row} (line {}): {message}", row + 1)]
    Parse { row: usize, message: String },

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
