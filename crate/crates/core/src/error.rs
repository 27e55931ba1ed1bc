use thiserror::Error;

/// Errors produced by reconkit operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graphs are limited to {max} vertices, got {got}")]
    TooManyVertices { got: usize, max: usize },
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0}-{1} is not present")]
    EdgeAbsent(usize, usize),
    #[error("graph has no edges")]
    Edgeless,
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not connected")]
    NotConnected,
    #[error("malformed graph6 at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("({card}, {d}) is not a da-ecard of the given graph")]
    NotACard { card: String, d: u32 },
    #[error("invalid caterpillar sequence: {0}")]
    InvalidSequence(String),
    #[error("reductions are not consistent with any common caterpillar sequence")]
    InconsistentReductions,
    #[error("sequence has fewer than two spine-preserving reductions")]
    TooFewReductions,
    #[error("no pair of reductions reconstructs the sequence uniquely")]
    NoIdentifyingPair,
    #[error("all edge-cards of the component are isomorphic")]
    IsomorphicEdgeCards,
    #[error("invalid family spec `{spec}`: {reason}")]
    FamilySpec { spec: String, reason: String },
    #[error("{what} is limited to {max}, got {got}")]
    OutOfRange {
        what: &'static str,
        got: usize,
        max: usize,
    },
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("invalid filter `{0}`")]
    Filter(String),
    #[error("store i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
