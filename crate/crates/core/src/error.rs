use thiserror::Error;

use crate::diagram::Family;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: Family, rank: usize },

    #[error("unsupported family `{0}`: only classical families A, B, C, D are allowed")]
    UnsupportedFamily(String),

    #[error("duplicate component id `{0}`")]
    DuplicateComponent(String),

    #[error("vertex map `{map}` is not an automorphism of {family}{rank}")]
    InvalidVertexMap {
        map: String,
        family: Family,
        rank: usize,
    },

    #[error("component permutation is not a bijection preserving family and rank: {0}")]
    InvalidPermutation(String),

    #[error("group closure exceeded the safety bound of {0} elements")]
    ClosureBound(usize),

    #[error("the action is not transitive on the components")]
    NotTransitive,

    #[error("at least two components are required")]
    TooFewComponents,

    #[error("vertex {component}:{index} does not exist in the diagram")]
    DanglingVertex { component: usize, index: usize },

    #[error("invalid part: {0}")]
    InvalidPart(String),

    #[error("polymer is not valid: {0}")]
    InvalidPolymer(String),

    #[error("hermitian data is not valid: {0}")]
    InvalidHermitian(String),

    #[error("anisotropy flags keyed on wrong orbits: {0}")]
    FlagsMismatch(String),

    #[error("condition (2) cannot be dropped: orbits {0:?} are of inner type A")]
    InnerTypeA(Vec<Vec<usize>>),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not unipotent")]
    NotUnipotent,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("matrix is singular")]
    Singular,

    #[error("component {0} is not of type A1")]
    NonA1Component(usize),

    #[error("support set must be nonempty")]
    EmptySupport,

    #[error("vertex {index} is not an admissible minuscule vertex of {family}{rank}")]
    NotAdmissible {
        family: Family,
        rank: usize,
        index: usize,
    },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("multiplicity keyed on unknown orbit: {0}")]
    UnknownOrbit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
