use thiserror::Error;

/// Errors raised by the library. Variants are grouped by the layer that
/// produces them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // algebra
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("length mismatch: {what} (expected {expected}, got {actual})")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("operands belong to different algebras: {left:?} vs {right:?}")]
    AlgebraMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid trace vector: {0}")]
    InvalidTrace(String),

    // inclusion analysis
    #[error("malformed inclusion: {0}")]
    Malformed(String),
    #[error("dimension mismatch: A*m = {computed:?} but n = {declared:?}")]
    DimensionMismatch { computed: Vec<u64>, declared: Vec<u64> },
    #[error("column {0} of the inclusion matrix is zero (non-unital inclusion)")]
    EmptyColumn(usize),
    #[error("Bratteli diagram is disconnected; the Markov trace is not unique")]
    DisconnectedDiagram,

    // conditional expectation
    #[error("operator is not pinched: off-block entry of size {0:e}")]
    NotPinched(f64),
    #[error("mixed-unitary form requires the standard trace (equal weights), got {0:?}")]
    NonStandardTrace(Vec<f64>),
    #[error("Gram matrix is numerically singular (condition number {0:e})")]
    SingularGram(f64),

    // basis constructions
    #[error("spectral condition A^t n = d m fails")]
    SpectralConditionFailed,
    #[error("sub-algebra is not abelian (dims {0:?})")]
    NotAbelian(Vec<u64>),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("middle algebras differ: {inner:?} vs {outer:?}")]
    MiddleAlgebraMismatch { inner: Vec<u64>, outer: Vec<u64> },
    #[error("direct sum needs equal cardinalities, got {0} and {1}")]
    CardinalityMismatch(usize, usize),
    #[error("block dimension {n} is not a multiple of {m}")]
    NotMultiple { n: u64, m: u64 },
    #[error("internal divisibility failure: {0}")]
    DivisibilityError(String),
    #[error("sum of U_k e1 U_k* deviates from the identity by {0:e}")]
    PartitionOfUnityFailed(f64),
    #[error("GNS dimension {dim} exceeds the cap {cap}")]
    GnsTooLarge { dim: usize, cap: usize },
    #[error("no known construction applies to this inclusion")]
    NoKnownConstruction,

    // documents
    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
