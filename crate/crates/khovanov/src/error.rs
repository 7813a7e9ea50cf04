use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KhError {
    #[error("malformed PD code: {0}")]
    MalformedPd(String),
    #[error("edge label {label} appears {count} times (expected exactly twice)")]
    EdgeCount { label: u32, count: usize },
    #[error("orientation error: {0}")]
    Orientation(String),
    #[error("PD code does not describe a planar diagram: {0}")]
    NonPlanar(String),
    #[error("basepoint edge {0} is not an edge of the diagram")]
    BadBasepoint(u32),
    #[error("the reduced theory needs a basepoint")]
    BasepointMissing,
    #[error("rank over a field was requested for a ring that is not a field")]
    NotAField,
    #[error("no sign assignment makes every face anticommute")]
    NoSignageFound,
    #[error("bad ring: {0}")]
    BadRing(String),
    #[error("expected a knot, got a diagram with {0} components")]
    NotAKnot(usize),
    #[error("unexpected filtration profile: {0}")]
    UnexpectedProfile(String),
    #[error("homology is zero")]
    EmptyHomology,
    #[error("diagram has {n} crossings, above the limit of {limit}")]
    TooManyCrossings { n: usize, limit: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("table parse error on line {line}: {msg}")]
    Table { line: usize, msg: String },
}
