use thiserror::Error;

/// Errors raised by operator, measurement and ordering routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("dimension must be at least {min}, got {got}")]
    InvalidDimension { min: usize, got: usize },

    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("not a density matrix: {0}")]
    InvalidState(String),

    #[error("operator is not traceless (trace {0:e})")]
    NotTraceless(f64),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("invalid stochastic map: {0}")]
    InvalidStochasticMap(String),

    #[error("stochastic map is singular")]
    SingularMap,

    #[error("POVM elements are linearly dependent")]
    LinearlyDependent,

    #[error("no linear relation between the POVMs")]
    NoLinearRelation,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("outcome {index} has probability {prob:e} but volume {volume:e}")]
    ZeroVolumeOutcome {
        index: usize,
        prob: f64,
        volume: f64,
    },

    #[error("probability {0:e} outside [0, 1] beyond tolerance")]
    ProbabilityOutOfRange(f64),

    #[error("derivative order must be at least {min}, got {got}")]
    DerivativeOrder { min: usize, got: usize },

    #[error("curve leaves the state space at t = {0:e}")]
    LeavesStateSpace(f64),

    #[error("could not draw a separating direction after {0} attempts")]
    ResamplingExhausted(usize),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
