use thiserror::Error;

use crate::quiver::{ArrowId, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arrow {arrow} has an undeclared endpoint {vertex}")]
    DanglingArrow { arrow: ArrowId, vertex: VertexId },
    #[error("duplicate arrow id {0}")]
    DuplicateArrowId(ArrowId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown arrow {0}")]
    UnknownArrow(ArrowId),
    #[error("arrows are not composable: {0}")]
    NotComposable(String),
    #[error("schema violation: {0}")]
    SchemaViolation(String),
    #[error("quotient not proven finite dimensional within max_len = {0}")]
    NotStabilized(usize),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("degree map missing or incomplete")]
    MissingDegreeMap,
    #[error("hypothesis {hypothesis} violated: {witness}")]
    HypothesisViolated { hypothesis: String, witness: String },
    #[error("relation {0} mixes sources or targets")]
    NonHomogeneousRelation(usize),
    #[error("word is not reduced")]
    NotReduced,
    #[error("graph vertex {0} does not occur in the word")]
    UnusedVertex(VertexId),
    #[error("letter {0} is not a vertex of the graph")]
    UnknownLetter(VertexId),
    #[error("group has more than {0} elements")]
    GroupTooLarge(usize),
    #[error("quiver has an oriented cycle")]
    OrientedCycle,
    #[error("summand {0} does not have a local endomorphism ring")]
    NotLocal(usize),
    #[error("summands {0} and {1} are isomorphic")]
    IsomorphicSummands(usize, usize),
    #[error("maps at position {0} do not compose to zero")]
    NotAComplex(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("module relation does not vanish: {0}")]
    RelationNotSatisfied(String),
}

pub type Result<T> = std::result::Result<T, Error>;
