use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed graph document: {0}")]
    MalformedDocument(String),
    #[error("vertex ids must be non-empty")]
    EmptyVertexId,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("edge ids must be non-empty")]
    EmptyEdgeId,
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("{item} refers to undeclared vertex `{vertex}`")]
    UnknownEndpoint { item: String, vertex: String },
    #[error("duplicate omega bundle {src} -> {dst}")]
    DuplicateBundle { src: String, dst: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("vertex set contains an index outside this graph")]
    ForeignVertexSet,
    #[error("value belongs to a different graph")]
    GraphMismatch,
    #[error("vertex set must be non-empty")]
    EmptySet,

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("simple cycle enumeration exceeded the cap of {cap} cycles")]
    CycleCapExceeded { cap: usize },
    #[error("hereditary saturated lattice exceeded the cap of {cap} sets")]
    LatticeCapExceeded { cap: usize },
    #[error("graph has {count} vertices; exact enumeration is limited to {limit}")]
    TooManyVertices { count: usize, limit: usize },

    #[error("vertex set is not hereditary and saturated")]
    NotHereditarySaturated,
    #[error("pair is not admissible: `{0}` is not a breaking vertex")]
    NotAdmissible(String),
    #[error("`{0}` is not a breaking vertex of the given set")]
    NotBreakingVertex(String),
    #[error("malformed ideal descriptor: {0}")]
    MalformedDescriptor(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("cannot parse algebra element: {0}")]
    ElementSyntax(String),
}

impl Error {
    /// Errors that mean the input graph itself is unusable.
    pub fn is_invalid_graph(&self) -> bool {
        matches!(
            self,
            Error::MalformedDocument(_)
                | Error::EmptyVertexId
                | Error::DuplicateVertex(_)
                | Error::EmptyEdgeId
                | Error::DuplicateEdge(_)
                | Error::UnknownEndpoint { .. }
                | Error::DuplicateBundle { .. }
        )
    }

    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::CycleCapExceeded { .. } | Error::LatticeCapExceeded { .. } | Error::TooManyVertices { .. }
        )
    }
}
