use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised anywhere in the workbench.
///
/// Variants fall into three families: malformed input data, infeasible or
/// inconsistent requests, and violations of internal invariants. The CLI maps
/// each family onto a distinct exit code through [`Error::kind`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("matrix is not square ({rows} x {cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("unsupported format token `{0}`")]
    UnsupportedFormat(String),
    #[error("cannot split {n} vertices into {k} non-empty parts")]
    InfeasibleBalance { n: usize, k: usize },
    #[error("no balanced contiguous partition found for k in {k_from}..={k_to}")]
    ContiguityUnattainable { k_from: usize, k_to: usize },
    #[error("penalty must exceed 1, got {0}")]
    PenaltyTooSmall(f64),
    #[error("{n} qubits exceeds the simulator cap of {cap}")]
    QubitCapExceeded { n: usize, cap: usize },
    #[error("graph with {n} vertices exceeds the exact solver cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("vertex set is not independent")]
    InfeasibleSolution,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(
        "no backend in the roster accepts a subproblem of {n} vertices (density {density:.3})"
    )]
    NoBackend { n: usize, density: f64 },
    #[error("invalid prediction for {graph_id}: {reason}")]
    InvalidPrediction { graph_id: String, reason: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("{}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input: files, formats, out-of-range values.
    Data,
    /// A postcondition the library guarantees did not hold.
    Invariant,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Invariant(_) => ErrorKind::Invariant,
            _ => ErrorKind::Data,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
