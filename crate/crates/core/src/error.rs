use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("edge weight {weight} is not in the declared weight set")]
    UndeclaredWeight { weight: i64 },

    #[error("graph contains a negative cycle")]
    NegativeCycle,

    #[error("vertex {vertex} has no outgoing edge")]
    DeadEndVertex { vertex: usize },

    #[error("owner partition covers {got} vertices, expected {expected}")]
    OwnerLengthMismatch { expected: usize, got: usize },

    #[error("strategy is invalid at vertex {vertex}")]
    InvalidStrategy { vertex: usize },

    #[error("{what}: needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("letter {letter} is not in the automaton alphabet")]
    AlphabetMismatch { letter: i64 },

    #[error("input is not a single cycle of total weight zero: {reason}")]
    NotAZeroCycle { reason: &'static str },

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("no homomorphism into the candidate graph; it is not universal at this scale")]
    HomomorphismNotFound,
}
