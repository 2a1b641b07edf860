use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("order relation has a cycle through {0} and {1}")]
    Cycle(String, String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("grid sizes must all be at least 1, got {0:?}")]
    InvalidSize(Vec<usize>),
    #[error("input set is empty")]
    EmptyInput,
    #[error("interval budget exceeded: more than {cap} intervals (raise --max-intervals)")]
    BudgetExceeded { cap: usize },
    #[error("subset budget exceeded: interval {interval} has {covers} covers, cap is {cap}")]
    SubsetBudgetExceeded {
        interval: String,
        covers: usize,
        cap: usize,
    },
    #[error("union is not connected, no interval join exists")]
    NotConnected,
    #[error("{0} is not an interval of the poset")]
    NotAnInterval(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(
        "commutativity violated from {x} to {y}: path {path_a:?} differs from path {path_b:?}"
    )]
    CommutativityViolation {
        x: String,
        y: String,
        path_a: Vec<String>,
        path_b: Vec<String>,
    },
    #[error("{0} -> {1} is not a Hasse arrow (maps are given on covering pairs only)")]
    NotHasseArrow(String, String),
    #[error("missing map on Hasse arrow {0} -> {1}")]
    MissingMap(String, String),
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(String, String),
    #[error("modules are over different fields")]
    FieldMismatch,
    #[error("modules are over different posets")]
    PosetMismatch,
    #[error("vertex map is not order-preserving at {0} <= {1}")]
    NotOrderPreserving(String, String),
    #[error("the zigzag system requires a 2D-grid poset")]
    NotAGrid,
    #[error("no source of the compressed poset lies below a sink")]
    NoComparablePair,
    #[error("{0} is not contained in {1}")]
    NotContained(String, String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse field element `{0}`")]
    ParseElement(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
