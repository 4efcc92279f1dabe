use thiserror::Error;

/// Errors produced by the planning library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cell index {cell} out of range 1..={max}")]
    CellOutOfRange { cell: usize, max: usize },

    #[error("invalid environment: {0}")]
    InvalidEnvironment(String),

    #[error("inconsistent obstacle event: {0}")]
    EventConsistency(String),

    #[error("heading is undefined for a zero-length segment at ({x}, {y})")]
    DegenerateSegment { x: f64, y: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("coordinate {value} outside [{lo}, {hi}]")]
    CoordinateOutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("objective returned a non-finite value ({value}) at iteration {iteration}")]
    NonFiniteObjective { value: f64, iteration: usize },

    #[error("enumeration budget exceeded: {0}")]
    OracleBudget(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("scenario parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
