use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid size {0} is not a power of two >= 8")]
    GridSize(usize),

    #[error("grid mismatch: expected {expected} samples, got {got}")]
    GridMismatch { expected: usize, got: usize },

    #[error("non-finite sample at index {0}")]
    NonFinite(usize),

    #[error("|z| = {modulus} exceeds the quadrature guard {guard} for grid size {n}")]
    QuadratureAccuracy { modulus: f64, guard: f64, n: usize },

    #[error("distance to an empty set is undefined")]
    EmptySet,

    #[error("invalid arc: {0}")]
    InvalidArc(String),

    #[error("invalid argument `{arg}`: {reason}")]
    InvalidArgument { arg: &'static str, reason: String },

    #[error("modulus evaluated to {value} at t = {t}")]
    ModulusData { t: f64, value: f64 },

    #[error("degenerate modulus: omega({t}) = 0 at a positive separation")]
    DegenerateModulus { t: f64 },

    #[error("band {band} is below the grid resolution {resolution}")]
    UnresolvableScale { band: f64, resolution: f64 },

    #[error("inconsistent sample set: boundary seminorm {boundary:e}, disk seminorm {disk:e}")]
    InconsistentSamples { boundary: f64, disk: f64 },

    #[error("function has no closed-form evaluator; {0} needs interior sampling")]
    NoEvaluator(&'static str),

    #[error("singular evaluation: {0}")]
    SingularEvaluation(String),

    #[error("log-modulus contains +inf at index {0}")]
    UnboundedModulus(usize),

    #[error("function is identically zero on the grid")]
    ZeroFunction,

    #[error("quotient is not bounded: |f/U| = {value:e} at {location} exceeds {limit:e}")]
    NotDivisible {
        value: f64,
        limit: f64,
        location: String,
    },

    #[error("parameter sequence is not monotone at position {0}")]
    NonMonotone(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
