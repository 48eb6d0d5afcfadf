//! GHZ and W states.

use crate::graph::{Diagram, VertexId, VertexKind};
use crate::phase::Phase;

/// A phase-0 Z spider with `n` outputs: `|0…0⟩ + |1…1⟩`.
pub fn ghz_n(n: usize) -> Diagram {
    let mut d = Diagram::new();
    let z = d.add_vertex(VertexKind::Z(Phase::ZERO));
    for _ in 0..n {
        let o = d.add_output();
        d.add_edge(z, o).unwrap();
    }
    d
}

pub fn ghz_state() -> Diagram {
    ghz_n(3)
}

/// A three-output diagram proportional to `|001⟩ + |010⟩ + |100⟩`.
///
/// Each output `j` leaves a `Z(π/3)` spider `O_j`. The three `O_j` share an
/// `X(π)` spider, and each also meets a hub `Z(0)` through an `X(0)` spider
/// carrying a `Z(5π/3)` point. Non-Clifford phases are unavoidable since the
/// W state is not a stabilizer state.
pub fn w_state() -> Diagram {
    let mut d = Diagram::new();
    let parity = d.add_vertex(VertexKind::X(Phase::PI));
    let hub = d.add_vertex(VertexKind::Z(Phase::ZERO));
    let mut outs: Vec<VertexId> = Vec::new();
    for _ in 0..3 {
        let o = d.add_vertex(VertexKind::Z(Phase::new(1, 3)));
        let g = d.add_vertex(VertexKind::X(Phase::ZERO));
        let p = d.add_vertex(VertexKind::Z(Phase::new(5, 3)));
        d.add_edge(o, parity).unwrap();
        d.add_edge(o, g).unwrap();
        d.add_edge(g, hub).unwrap();
        d.add_edge(g, p).unwrap();
        outs.push(o);
    }
    for o in outs {
        let b = d.add_output();
        d.add_edge(o, b).unwrap();
    }
    d
}
