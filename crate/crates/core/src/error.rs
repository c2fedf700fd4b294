use crate::edge::EdgeId;
use crate::relation::Endpoint;
use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid edge id {0:?}: ids are nonempty and use only ASCII letters, digits and '_'")]
    InvalidEdgeId(String),
    #[error("edge {edge} has nonpositive length {length}")]
    NonPositiveLength { edge: EdgeId, length: Rational },
    #[error("edge {0} is declared twice")]
    DuplicateEdge(EdgeId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown endpoint {0}")]
    UnknownEndpoint(Endpoint),
    #[error("endpoint {0} appears in more than one block")]
    OverlappingBlocks(Endpoint),
    #[error("empty block in partition")]
    EmptyBlock,
    #[error("relations are defined on different endpoint sets")]
    AmbientMismatch,
    #[error("graphs are defined on different edge spaces")]
    EdgeSpaceMismatch,
    #[error("coordinate {coordinate} is outside [0, {length}] on edge {edge}")]
    InvalidCoordinate {
        edge: EdgeId,
        coordinate: String,
        length: String,
    },
    #[error("{0} is not a vertex of this graph")]
    ForeignVertex(String),
    #[error("invalid cut on edge {edge}: {reason}")]
    InvalidCut { edge: EdgeId, reason: String },
    #[error("relation is not a refinement: block {block} is not contained in any block of the current relation")]
    NotARefinement { block: String },
    #[error("function has no piece for edge {0}")]
    MissingPiece(EdgeId),
    #[error("function has a piece for edge {0}, which is not in the graph")]
    ExtraPiece(EdgeId),
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("derivative of order {order} is discontinuous at vertex {vertex}: values {values}")]
    Discontinuous {
        order: usize,
        vertex: String,
        values: String,
    },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl Error {
    /// True for malformed text input, false for well-formed input that violates
    /// a domain precondition.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }

    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            reason: reason.into(),
        }
    }
}
