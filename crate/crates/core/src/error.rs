use thiserror::Error;

pub type Result<T> = std::result::Result<T, FcError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FcError {
    #[error("n = {n} is not admissible for b = {b}, d = {d}: {reason}")]
    NotInAdmissibleSet {
        n: usize,
        b: String,
        d: usize,
        reason: &'static str,
    },

    #[error("period b = {0} must be a rational number greater than 1")]
    BadPeriod(String),

    #[error("basis size d = {0} is outside the supported range 2..=12")]
    BadBasisSize(usize),

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: i64, limit: i64 },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("argument {x} outside the domain [{lo}, {hi}]")]
    DomainError { x: f64, lo: f64, hi: f64 },

    #[error("two-point Hermite basis requires distinct nodes (got x1 = x2 = {0})")]
    DegenerateNodes(f64),

    #[error("invalid shape parameters: {0}")]
    InvalidShape(String),

    #[error("blend table and data were built for different configurations")]
    ConfigMismatch,

    #[error("reference function vanishes on the evaluation grid")]
    ZeroFunction,

    #[error("convergence rows are not a dyadic sequence at n = {0}")]
    NonDyadicSequence(usize),

    #[error("least-squares matrix is rank deficient: numerical rank {rank}, smallest diagonal {smallest:e}")]
    RankDeficient { rank: usize, smallest: f64 },

    #[error("boundary matrix is singular (determinant {0:e})")]
    SingularBoundaryMatrix(f64),

    #[error("unknown function id `{0}`")]
    UnknownFunction(String),

    #[error("unknown problem id `{0}`")]
    UnknownProblem(String),

    #[error("table rows do not match: {0}")]
    RowMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("convergence sweep failed at n = {n}: {source}")]
    SweepFailed {
        n: usize,
        #[source]
        source: Box<FcError>,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for FcError {
    fn from(e: std::io::Error) -> Self {
        FcError::Io(e.to_string())
    }
}
