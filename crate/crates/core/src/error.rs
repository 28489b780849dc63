use crate::anytime::AnytimeTrace;
use crate::hierarchy::{BinaryHierarchy, Label};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    // hierarchy
    #[error("index set is empty")]
    EmptyIndexSet,
    #[error("label {0} appears more than once")]
    DuplicateLabel(Label),
    #[error("cluster must contain at least one label")]
    EmptyCluster,
    #[error("clusters {0} and {1} partially overlap")]
    NotLaminar(String, String),
    #[error("cluster {0} does not split into exactly two sub-clusters")]
    NotBinary(String),
    #[error("cluster set is missing the root or a singleton: {0}")]
    MissingRootOrLeaf(String),
    #[error("cluster {0} is not a cluster of the tree")]
    UnknownCluster(String),
    #[error("cluster {0} is not a grandchild (it is the root or a child of the root)")]
    NotAGrandchild(String),
    #[error("the two trees or the tree and the dataset are over different index sets")]
    IndexSetMismatch,
    #[error("index set has {0} labels; at least 2 are required")]
    IndexSetTooSmall(usize),
    #[error("index set has {0} labels; enumeration is capped at {max}", max = crate::hierarchy::MAX_ENUMERATION_LEAVES)]
    IndexSetTooLarge(usize),

    // geometry
    #[error("unknown label {0}")]
    UnknownLabel(Label),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cosine dissimilarity is undefined for the zero vector (label {0})")]
    ZeroNormVector(Label),
    #[error("non-finite coordinate for label {0}")]
    NonFiniteCoordinate(Label),
    #[error("dataset has no points")]
    EmptyDataset,

    // linkage
    #[error("clusters must be disjoint; label {0} is in both")]
    OverlappingClusters(Label),
    #[error("{0}")]
    StrategyUnavailable(String),
    #[error("linkage {0} has no Lance-Williams recurrence")]
    UnsupportedKind(String),
    #[error("the sufficient-statistics average linkage does not support {0} dissimilarity")]
    UnsupportedDissimilarity(String),

    // anytime
    #[error("anytime clustering did not reach a homogeneous tree within {budget} iterations")]
    IterationBudgetExceeded {
        budget: usize,
        partial: Box<AnytimeTrace>,
    },

    // validation
    #[error("correlation is undefined: {0}")]
    DegenerateVariance(String),

    // io
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("bad IDX magic number {found:#010x}, expected {expected:#010x}")]
    BadMagic { expected: u32, found: u32 },
    #[error("IDX file truncated: need {needed} bytes, have {available}")]
    TruncatedFile { needed: usize, available: usize },
    #[error("IDX file has {0} unexpected trailing bytes")]
    TrailingData(usize),
    #[error("image and label files disagree on sample count ({images} vs {labels})")]
    CountMismatch { images: usize, labels: usize },
    #[error("digit {digit} has {available} images, {requested} requested")]
    InsufficientSamples {
        digit: u8,
        available: usize,
        requested: usize,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// The last tree reached before the iteration budget ran out, if this is
    /// a budget error.
    pub fn partial_tree(&self) -> Option<&BinaryHierarchy> {
        match self {
            Error::IterationBudgetExceeded { partial, .. } => Some(&partial.final_tree),
            _ => None,
        }
    }
}
