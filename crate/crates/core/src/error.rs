use thiserror::Error;

/// Every failure the toolkit can report.
///
/// Variants are grouped by what went wrong rather than by module, so the
/// CLI can map them onto exit codes with [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // input validation
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("duplicate label {0}")]
    DuplicateLabel(u64),
    #[error("label must be positive, got {0}")]
    NonPositiveLabel(i64),
    #[error("empty vertex set")]
    EmptySubset,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    // polynomial algebra
    #[error("zero polynomial has no tangent cone")]
    ZeroPolynomial,
    #[error("need at least {needed} interpolation nodes, got {got}")]
    InsufficientNodes { needed: usize, got: usize },
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(String),
    #[error("snapping residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    SnappingResidual { residual: f64, tolerance: f64 },

    // combinatorics
    #[error("{edges} edges exceed the enumeration cap of {cap}")]
    EnumerationCap { edges: usize, cap: usize },

    // numerics
    #[error("eigen solver did not converge in {0} sweeps")]
    NoConvergence(usize),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("ambiguous clustering: {0}")]
    AmbiguousClustering(String),
    #[error("need {needed} assigned levels, got {got}")]
    InsufficientLevels { needed: usize, got: usize },
    #[error("graphs are equal, nothing to separate")]
    NothingToSeparate,

    // reconstruction
    #[error("exponent {0} has no decomposition into labels")]
    NoDecomposition(u64),
    #[error("exponent {0} decomposes into labels in more than one way")]
    MultipleDecompositions(u64),
    #[error(
        "coefficient magnitude {magnitude} at exponent {exponent} is not a component-size product"
    )]
    InconsistentMagnitude { exponent: u64, magnitude: String },
    #[error("not a realizable forest family: {0}")]
    NotRealizable(String),
    #[error("realization search cap exceeded")]
    SearchCap,

    // game protocol
    #[error("protocol violation: {0}")]
    Protocol(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("solver gave up: {0}")]
    GaveUp(String),
}

impl Error {
    /// Process exit code for the command-line tool: 3 for numeric precision
    /// failures, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoConvergence(_)
            | Error::PrecisionExhausted(_)
            | Error::SnappingResidual { .. } => 3,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
