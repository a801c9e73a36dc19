use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph on {0} vertices exceeds the supported maximum of 63")]
    TooManyVertices(usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("empty vertex set")]
    EmptySet,
    #[error("not a tube: {0:?}")]
    NotATube(Vec<usize>),
    #[error("invalid tubing: {0}")]
    InvalidTubing(String),
    #[error("tube {0:?} is not in the tubing")]
    TubeNotInTubing(Vec<usize>),
    #[error("the full tube cannot be flipped")]
    FullTube,
    #[error("graph is not invariant under i -> n+1-i")]
    NotReversible,
    #[error("expected a {expected} graph, found {found}")]
    WrongGraphKind { expected: &'static str, found: String },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("vertex {0} is the root")]
    RootVertex(usize),
    #[error("invalid shuffle word: {0}")]
    InvalidWord(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("index ({i},{k}) out of range for n = {n}")]
    IndexOutOfRange { n: usize, i: usize, k: usize },
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("not a lattice: elements {0} and {1} have no unique {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
