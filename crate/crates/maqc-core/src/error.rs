use thiserror::Error;

/// Errors produced while validating inputs or running a computation.
///
/// Everything here is a *user-input* problem except
/// [`Error::BrokenDifferential`], which signals that a builder produced a
/// cochain complex with `d∘d ≠ 0` and therefore indicates a bug, not bad
/// input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}` in facet")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}` in facet")]
    DuplicateVertexInFacet(String),
    #[error("duplicate vertex `{0}` in vertex list")]
    DuplicateVertex(String),
    #[error("vertex `{0}` appears in more than one partition block")]
    OverlappingBlocks(String),
    #[error("vertex `{0}` is missing from the partition")]
    UncoveredVertex(String),
    #[error("unknown vertex `{0}` in partition block")]
    UnknownVertexInBlock(String),
    #[error("partition block {0} is empty")]
    EmptyBlock(usize),
    #[error("at most 64 partition blocks are supported, got {0}")]
    TooManyBlocks(usize),
    #[error("simplex is not a face of the complex")]
    NotAFace,
    #[error("not a codimension-one face pair")]
    NotCodimensionOne,
    #[error("block index {index} is not a member of the color set")]
    BlockNotInColorSet { index: usize },
    #[error("sphere dimension list has length {got}, expected {expected}")]
    DimsLengthMismatch { got: usize, expected: usize },
    #[error("operation requires Z2 coefficients")]
    RequiresZ2,
    #[error("operation requires a non-degenerate partition")]
    DegeneratePartition,
    #[error("monomials come from different complexes")]
    MixedComplexes,
    #[error("cochains come from different complexes")]
    MixedCochains,
    #[error("differential sanity failure: d∘d ≠ 0 between degrees {degree} and {next}")]
    BrokenDifferential { degree: i32, next: i32 },
    #[error("matrix shape mismatch between degrees {degree} and {next}")]
    ShapeMismatch { degree: i32, next: i32 },
    #[error("poset element `{0}` is referenced but never defined")]
    DanglingFacet(String),
    #[error("poset element `{0}` is declared twice")]
    DuplicatePosetElement(String),
    #[error("poset element `{id}` has rank {rank} but {count} facets")]
    FacetCountMismatch { id: String, rank: usize, count: usize },
    #[error("lower interval of poset element `{0}` is not a Boolean lattice")]
    NonBooleanInterval(String),
    #[error("poset element `{id}`: facet `{facet}` does not have rank {expected}")]
    FacetRankMismatch {
        id: String,
        facet: String,
        expected: usize,
    },
    #[error("poset element `{id}` lists {got} vertices but has rank {rank}")]
    VertexCountMismatch { id: String, rank: usize, got: usize },
    #[error("poset element `{id}` vertex labels disagree with its atoms")]
    VertexLabelMismatch { id: String },
    #[error("prism over the empty simplex is undefined")]
    EmptyPrism,
    #[error("truncation degree must be at least 1")]
    BadTruncation,
}

pub type Result<T> = std::result::Result<T, Error>;
