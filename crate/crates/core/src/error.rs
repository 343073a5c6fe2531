use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count {0} outside supported range 1..=12")]
    QubitCount(usize),
    #[error("basis index {index} out of range for {n} qubits")]
    IndexOutOfRange { n: usize, index: usize },
    #[error("expected {expected} amplitudes, got {got}")]
    Length { expected: usize, got: usize },
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),
    #[error("invalid bipartition: {0}")]
    Bipartition(String),
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix dimension {got} does not match expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("matrix dimension {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("no eigenvalue within tolerance of {0}")]
    NoMatchingLevel(f64),
    #[error("basis vector {index} fails verification (residual {residual:e})")]
    Verification { index: usize, residual: f64 },
    #[error("degenerate ground level")]
    DegenerateGround,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown named object `{0}`")]
    UnknownName(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
