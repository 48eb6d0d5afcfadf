//! A ZX-calculus engine for checking small quantum protocols.
//!
//! Diagrams are open multigraphs ([`graph::Diagram`]) whose Hilbert-space
//! meaning is computed by dense tensor contraction ([`semantics`]). The
//! [`rewrite`] module implements the rule set as local graph rewrites with
//! an oracle-backed soundness checker, and [`protocols`] builds the states,
//! gates and measurement circuits used to verify superdense coding with GHZ
//! states and pairwise key distribution with the W state.

pub mod error;
pub mod graph;
pub mod iso;
pub mod phase;
pub mod protocols;
pub mod random;
pub mod rewrite;
pub mod semantics;
pub mod zxg;

pub use error::{Result, ZxError};
pub use graph::{Color, Diagram, EdgeId, Point, Side, VertexId, VertexKind};
pub use phase::Phase;
pub use semantics::{evaluate, Matrix};
