use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T> = std::result::Result<T, ZxError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZxError {
    #[error("malformed phase `{0}`")]
    Phase(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid diagram at vertex {vertex}: {message}")]
    Invalid { vertex: String, message: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("degree cap exceeded at vertex {vertex} ({kind} allows at most {cap})")]
    DegreeCap {
        vertex: VertexId,
        kind: &'static str,
        cap: usize,
    },
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("{what} index {index} out of range (len {len})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },
    #[error("resource limit: tensor with {wires} wires exceeds cap of {cap}")]
    Resource { wires: usize, cap: usize },
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    Dimension(usize, usize, usize, usize),
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("stale match for rule {rule}: {reason}")]
    StaleMatch { rule: String, reason: String },
    #[error("replay of `{derivation}` failed at step {step}: {reason}")]
    Replay {
        derivation: String,
        step: usize,
        reason: String,
    },
    #[error("measured vector is not a basis state: {0}")]
    NotBasisState(String),
    #[error("{0}")]
    Argument(String),
}
