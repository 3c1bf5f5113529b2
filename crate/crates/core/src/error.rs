use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{a} is not invertible modulo {q}")]
    NonInvertible { a: i64, q: u64 },

    #[error("weight {0} is not one of 12, 16, 18, 20, 22, 26")]
    UnsupportedWeight(u32),

    #[error("index {requested} exceeds table length {available}")]
    RangeExceeded { requested: u64, available: u64 },

    #[error("window [{a}, {b}] with sharpness {delta} has no room for two transitions")]
    DegenerateSupport { a: f64, b: f64, delta: f64 },

    #[error("quadrature would need more than {limit} panels")]
    BudgetExceeded { limit: u64 },

    #[error("gamma pole at {0}")]
    Pole(f64),

    #[error("truncated tail estimate {tail:e} exceeds {limit:e}")]
    TruncationWarning { tail: f64, limit: f64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("phase derivative has no sign change on the interval")]
    NoStationaryPoint,

    #[error("phase derivative changes sign more than once")]
    MultipleStationaryPoints,

    #[error("regime violated: {0}")]
    RegimeViolated(String),

    #[error("stationary point {0} lies outside the window support")]
    StationaryOutsideSupport(f64),

    #[error("objective denominator vanishes at ({p}, {q})")]
    DenominatorVanishes { p: String, q: String },

    #[error("smoothed estimate not converged: change {change:e} above target {target:e}")]
    NotConverged { change: f64, target: f64 },

    #[error("invalid phase: {0}")]
    InvalidPhase(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
