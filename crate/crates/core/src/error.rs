use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("parameters must be positive, got ({a}, {b})")]
    NotPositive { a: i64, b: i64 },
    #[error("parameters must satisfy a < b, got ({a}, {b})")]
    NotIncreasing { a: i64, b: i64 },
    #[error("parameters ({a}, {b}) are not relatively prime")]
    NotCoprime { a: i64, b: i64 },
    #[error("({p}, {q}) is not skew free: p + q must be odd")]
    NotSkewFree { p: i64, q: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("empty interval [{lo}; {hi}]")]
    EmptyInterval { lo: i64, hi: i64 },
    #[error("vertex {vertex} has degree {degree}, expected 2")]
    DegreeViolation { vertex: String, degree: usize },
    #[error("{0} is not an edge of the graph")]
    NotAnEdge(String),
    #[error("pencil between intervals of sizes {0} and {1}")]
    PencilSizeMismatch(i64, i64),
    #[error("pencil offset {0} is neither short nor long")]
    PencilOffset(i64),
    #[error("the subgraph splits into {0} cycles, expected a single tour")]
    NotATour(usize),
    #[error("no tour exists: {0}")]
    NoTour(String),
    #[error("invalid extension width {width}: {reason}")]
    InvalidWidth { width: i64, reason: String },
    #[error("extension is malformed: {0}")]
    MalformedExtension(String),
    #[error("split width {split} does not match extension width {extension}")]
    WidthMismatch { split: i64, extension: i64 },
    #[error("unsupported split: {0}")]
    UnsupportedSplit(String),
    #[error("construction requires {0}")]
    WrongRegime(String),
    #[error("intervals are not adjacent: {0}")]
    NotAdjacent(String),
    #[error("size {n} is below the construction threshold {bound}")]
    BelowThreshold { n: i64, bound: i64 },
    #[error("size {n} must be even for an odd-odd pair")]
    ParityViolation { n: i64 },
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("no bracket found: {0}")]
    BracketNotFound(String),
    #[error("not a switch: {0}")]
    NotASwitch(String),
    #[error("switch system does not connect its cycles")]
    NotConnecting,
    #[error("switches share edge {0}")]
    NotEdgeDisjoint(String),
    #[error("row vertex {0} is not mixed in the pattern")]
    NotMixed(i64),
    #[error("signature hypergraph is disconnected")]
    DisconnectedHypergraph,
    #[error("height {m} cannot be split into odd parts of size at least {part_min}")]
    Unpartitionable { m: i64, part_min: i64 },
    #[error("pattern layout infeasible: {0}")]
    LayoutInfeasible(String),
    #[error("heights differ: {0} and {1}")]
    HeightMismatch(i64, i64),
    #[error("tour has no universal joint")]
    NoJoint,
    #[error("no provider tour for a {0} x {1} block")]
    ProviderUnavailable(i64, i64),
    #[error("assembly failed: {0}")]
    Assembly(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("malformed tour file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
