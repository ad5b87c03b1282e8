use thiserror::Error;

use crate::graph::Vertex;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop on vertex {0}")]
    SelfLoop(u64),

    #[error("duplicate vertex id {0}")]
    DuplicateId(u64),

    #[error("unknown vertex id {0}")]
    UnknownId(u64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("set is not a distance-{r} dominating set: vertex {witness} is undominated")]
    NotDominating { r: usize, witness: u64 },

    #[error("instance too large for exhaustive search: n = {n} exceeds limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("value {value} does not fit a {n}-vertex id field")]
    IdOutOfRange { value: u32, n: usize },

    #[error("round {round}: vertex {vertex} sent {bits} bits, cap is {cap}")]
    Bandwidth {
        round: usize,
        vertex: Vertex,
        bits: usize,
        cap: usize,
    },

    #[error("round {round}: vertex {vertex} violated the {model} model: {reason}")]
    ModelViolation {
        round: usize,
        vertex: Vertex,
        model: &'static str,
        reason: String,
    },

    /// A vertex process detected a broken protocol invariant.
    #[error("round {round}: protocol failure at vertex {vertex}: {reason}")]
    Protocol {
        round: usize,
        vertex: Vertex,
        reason: String,
    },

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
