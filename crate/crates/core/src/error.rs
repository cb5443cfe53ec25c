use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("spectrum is not rational: rational roots account for {found} of {degree} eigenvalues")]
    IrrationalSpectrum { found: usize, degree: usize },
    #[error("matrix is not diagonalizable over the rationals")]
    NotDiagonalizable,
    #[error("rational root search exceeded its budget (coefficients too large to factor)")]
    RootSearchExhausted,
    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("{what} is not an integer: {value}")]
    NonIntegral { what: String, value: String },
    #[error("{what} is not positive: {value}")]
    NonPositive { what: String, value: String },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("duplicate edge {0} -- {1}")]
    DuplicateEdge(String, String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("not distance-regular: {0}")]
    NotDrg(String),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("hypotheses not met: {}", .0.join("; "))]
    HypothesisFailure(Vec<String>),
    #[error("multiplicity {which} = {value} is not a nonnegative integer")]
    NonIntegralMultiplicity { which: String, value: String },
    #[error("invalid Q-polynomial ordering: {0}")]
    InvalidOrdering(String),
    #[error("module could not be split over the rationals")]
    Unsplittable,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
