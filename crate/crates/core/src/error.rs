use thiserror::Error;

use crate::simplicial::{Simplex, Vertex};

#[derive(Debug, Error)]
pub enum Error {
    #[error("simplex {0:?} repeats a vertex")]
    DuplicateVertexInSimplex(Simplex),
    #[error("empty vertex sequence in input")]
    EmptySimplex,
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(Vertex),
    #[error("apex {0} already belongs to the complex")]
    ApexCollision(Vertex),
    #[error("not a pseudo-manifold: {0}")]
    NotPseudoManifold(String),
    #[error("complex is not orientable")]
    NotOrientable,
    #[error("simplex {0:?} is not a simplex of the ambient triangulation")]
    MisalignedSubcomplex(Simplex),

    #[error("malformed permutation: {0}")]
    BadPermutation(String),
    #[error("permutation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("group closure exceeded the cap of {0} elements")]
    GroupTooLarge(usize),
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,

    #[error("invalid monodromy cocycle: {0}")]
    CocycleInvalid(String),
    #[error("base is not an admissible pseudo-manifold: {0}")]
    BaseNotPseudoManifold(String),
    #[error("branch locus is not a good subcomplex of the base")]
    BranchLocusNotGood,
    #[error("lifted triangulation is not simplicial over {0:?}; subdivide the base first")]
    CoarseTriangulation(Simplex),
    #[error("not a covering map: {0}")]
    NotACovering(String),
    #[error("incompatible complexes: {0}")]
    IncompatibleComplexes(String),
    #[error("total complex is not connected")]
    TotalNotConnected,
    #[error("coverings have different bases")]
    BasesDiffer,
    #[error("neither covering is regular")]
    NeitherRegular,
    #[error("operation needs dimension 2, got {0}")]
    DimensionNotTwo(isize),

    #[error("vertex permutation is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("action is not effective: {0}")]
    NotEffective(String),
    #[error("invalid action: {0}")]
    ActionInvalid(String),
    #[error("action is not good")]
    NotGoodAction,

    #[error("chart is not conical: {0}")]
    NotConical(String),
    #[error("apex is not a codimension-2 point: {0}")]
    NotCodimTwo(String),
    #[error("local models are not constant on a stratum: {0}")]
    InconsistentModels(String),
    #[error("invalid chart: {0}")]
    ChartInvalid(String),
    #[error("charts are not equivalent")]
    NotEquivalent,
    #[error("not a branched covering: {0}")]
    NotABranchedCovering(String),
    #[error("automorphism does not lift: {0}")]
    NotLiftable(String),
    #[error("automorphism reverses orientation at a fixed point")]
    OrientationViolation,
    #[error("singular locus is not of pure codimension 2: {0}")]
    SingularLocusNotCodimTwo(String),
    #[error("search space too large: {0}")]
    SearchTooLarge(String),

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
