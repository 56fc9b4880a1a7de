use thiserror::Error;

use crate::curve::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure surfaced by the library. Each variant maps to a stable,
/// machine-readable code via [`Error::code`].
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(ValidationReport),
    #[error("configuration is not connected")]
    NotConnected,
    #[error("configuration is not projective (removed points present)")]
    NotProjective,
    #[error("configuration is not affine (no removed points)")]
    NotAffine,
    #[error("normalization is reducible ({0} components); an irreducible normalization is required")]
    ReducibleNormalization(usize),
    #[error("point {0} not found")]
    PointNotFound(String),
    #[error("point {0} is a removed point and cannot be identified")]
    OverlapWithRemoved(String),
    #[error("identification set must contain at least two distinct points, got {0}")]
    TrivialMerge(usize),
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("element {0} is not a member of the group")]
    NotAMember(String),
    #[error("group is not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group of order {order} exceeds the bound {bound}")]
    GroupTooLarge { order: u128, bound: u128 },
    #[error("unknown catalog group {0:?}")]
    UnknownGroup(String),
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error("action is not simply transitive: {0}")]
    NotSimplyTransitive(String),
    #[error("not a transversal: {0}")]
    NotATransversal(String),
    #[error("the given subgroups/elements do not generate the ambient group")]
    NotGenerating,
    #[error("base cover is not connected")]
    BaseNotConnected,
    #[error("fiber over {0} is not a torsor (point is ramified or removed)")]
    FiberNotTorsor(String),
    #[error("component ids overlap: {0}")]
    ComponentOverlap(String),
    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u64, u64),
    #[error("relation does not preserve the cover: {0}")]
    RelationNotPreserved(String),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("group action does not commute with the relation: {0}")]
    ActionNotEquivariant(String),
    #[error("relation has no nontrivial classes")]
    EmptyRelation,
    #[error("descriptor is not tree-normalized: {0}")]
    NotTreeNormalized(String),
    #[error("gluing on class {0} is not a left translation")]
    GluingNotTranslation(usize),
    #[error("genus-0 component {0} carries nontrivial monodromy without a ramification annotation")]
    EtaleGenusZero(String),
    #[error("invalid cover descriptor: {0}")]
    InvalidCover(String),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("component {0} has positive genus")]
    GenusNonzero(String),
    #[error("characteristic must be positive for this operation")]
    CharacteristicZero,
    #[error("io error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidConfig(_) => "INVALID_CONFIG",
            Error::NotConnected => "NOT_CONNECTED",
            Error::NotProjective => "NOT_PROJECTIVE",
            Error::NotAffine => "NOT_AFFINE",
            Error::ReducibleNormalization(_) => "REDUCIBLE_NORMALIZATION",
            Error::PointNotFound(_) => "POINT_NOT_FOUND",
            Error::OverlapWithRemoved(_) => "OVERLAP_WITH_REMOVED",
            Error::TrivialMerge(_) => "TRIVIAL_MERGE",
            Error::DegreeMismatch { .. } => "DEGREE_MISMATCH",
            Error::InvalidPermutation(_) => "INVALID_PERMUTATION",
            Error::NotAMember(_) => "NOT_A_MEMBER",
            Error::NotASubgroup => "NOT_A_SUBGROUP",
            Error::NotPrime(_) => "NOT_PRIME",
            Error::NotNormal => "NOT_NORMAL",
            Error::GroupTooLarge { .. } => "GROUP_TOO_LARGE",
            Error::UnknownGroup(_) => "UNKNOWN_GROUP",
            Error::Catalog(_) => "CATALOG_ERROR",
            Error::NotSimplyTransitive(_) => "NOT_SIMPLY_TRANSITIVE",
            Error::NotATransversal(_) => "NOT_A_TRANSVERSAL",
            Error::NotGenerating => "NOT_GENERATING",
            Error::BaseNotConnected => "BASE_NOT_CONNECTED",
            Error::FiberNotTorsor(_) => "FIBER_NOT_TORSOR",
            Error::ComponentOverlap(_) => "COMPONENT_OVERLAP",
            Error::CharacteristicMismatch(..) => "CHARACTERISTIC_MISMATCH",
            Error::RelationNotPreserved(_) => "RELATION_NOT_PRESERVED",
            Error::BadPartition(_) => "BAD_PARTITION",
            Error::ActionNotEquivariant(_) => "ACTION_NOT_EQUIVARIANT",
            Error::EmptyRelation => "EMPTY_RELATION",
            Error::NotTreeNormalized(_) => "NOT_TREE_NORMALIZED",
            Error::GluingNotTranslation(_) => "GLUING_NOT_TRANSLATION",
            Error::EtaleGenusZero(_) => "ETALE_GENUS_ZERO",
            Error::InvalidCover(_) => "INVALID_COVER",
            Error::TooLarge(_) => "TOO_LARGE",
            Error::GenusNonzero(_) => "GENUS_NONZERO",
            Error::CharacteristicZero => "CHARACTERISTIC_ZERO",
            Error::Io(_) => "IO_ERROR",
            Error::Parse(_) => "PARSE_ERROR",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
