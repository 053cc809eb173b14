use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ZeroVector: a primitive generator needs a nonzero vector")]
    ZeroVector,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("NotABasis: vectors are linearly dependent")]
    NotABasis,
    #[error("Unbounded: the halfspaces do not cut out a bounded region")]
    Unbounded,
    #[error("Empty: the halfspaces have empty intersection")]
    Empty,
    #[error("brute-force hull needs {steps} steps, above the limit of {limit}")]
    TooLarge { steps: u128, limit: u128 },
    #[error("NotSimple: vertex {vertex} lies on {facets} facets in dimension {dim}")]
    NotSimple { vertex: usize, facets: usize, dim: usize },
    #[error("polytope has dimension {intrinsic} inside ambient dimension {ambient}")]
    NotFullDimensional { intrinsic: usize, ambient: usize },
    #[error("NotSimplicial: {0}")]
    NotSimplicial(String),
    #[error("fan is not complete: {0}")]
    IncompleteFan(String),
    #[error("OddDimension: dimension {0} is odd")]
    OddDimension(usize),
    #[error("WrongDegree: monomial has degree {degree}, fan has dimension {dim}")]
    WrongDegree { degree: u32, dim: usize },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("parse error: {0}")]
    Parse(String),
}
