use thiserror::Error;

/// Errors raised by constructors and operations across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group order {order} exceeds the configured bound {bound}")]
    OrderBound { order: usize, bound: usize },
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("subgroups belong to different groups")]
    MismatchedGroups,
    #[error("invalid G-set: {0}")]
    InvalidGSet(String),
    #[error("invalid G-map: {0}")]
    InvalidGMap(String),
    #[error("G-set is not transitive")]
    NotTransitive,
    #[error("invalid orbit category: {0}")]
    InvalidOrbitCategory(String),
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("invalid simplicial set: {0}")]
    InvalidSSet(String),
    #[error("simplicial identity d_{i} d_{j} = d_{jm1} d_{i} fails on simplex {simplex}", jm1 = .j - 1)]
    SimplicialIdentity { i: usize, j: usize, simplex: usize },
    #[error("operator index {index} out of range for a simplex of dimension {dim}")]
    OperatorRange { index: usize, dim: usize },
    #[error("invalid simplicial map: {0}")]
    InvalidSMap(String),
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid orbit diagram: {0}")]
    InvalidDiagram(String),
    #[error("the family must contain the trivial subgroup")]
    MissingTrivialSubgroup,
    #[error("linear system too large: {unknowns} unknowns exceeds the cap {cap}")]
    SystemTooLarge { unknowns: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
