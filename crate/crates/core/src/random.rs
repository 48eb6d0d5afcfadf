//! Random valid diagrams for property tests and soundness sampling.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Diagram, VertexId, VertexKind};
use crate::phase::Phase;

#[derive(Clone, Copy, Debug)]
pub struct RandomParams {
    /// Non-boundary vertices, at least one.
    pub max_vertices: usize,
    pub max_boundaries: usize,
    pub max_extra_edges: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            max_vertices: 8,
            max_boundaries: 4,
            max_extra_edges: 5,
        }
    }
}

/// A random rational phase with denominator 3 to 8.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Phase {
    let d = rng.gen_range(3..=8);
    Phase::new(rng.gen_range(0..2 * d), d)
}

/// Draws from {0, π/2, π, 3π/2, extra}.
pub fn pick_phase<R: Rng + ?Sized>(rng: &mut R, extra: Phase) -> Phase {
    match rng.gen_range(0..5) {
        4 => extra,
        k => Phase::new(k, 2),
    }
}

pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, params: &RandomParams) -> Diagram {
    let mut d = Diagram::new();
    let extra = random_rational(rng);
    let n = rng.gen_range(1..=params.max_vertices.max(1));
    let mut spiders = Vec::new();
    let mut hs = Vec::new();
    for i in 0..n {
        let roll = rng.gen_range(0..100);
        let kind = if i == 0 || roll < 80 {
            let p = pick_phase(rng, extra);
            if rng.gen_bool(0.5) {
                VertexKind::Z(p)
            } else {
                VertexKind::X(p)
            }
        } else if roll < 93 {
            VertexKind::H
        } else {
            VertexKind::Diamond
        };
        let v = d.add_vertex(kind);
        match kind {
            VertexKind::H => hs.push(v),
            VertexKind::Diamond => {}
            _ => spiders.push(v),
        }
    }
    let pick = |rng: &mut R, s: &[VertexId]| *s.choose(rng).expect("at least one spider");

    for h in hs {
        for _ in 0..2 {
            let s = pick(rng, &spiders);
            d.add_edge(h, s).expect("H has room");
        }
    }

    let nb = rng.gen_range(0..=params.max_boundaries);
    let mut bs = Vec::new();
    for _ in 0..nb {
        bs.push(if rng.gen_bool(0.5) {
            d.add_input()
        } else {
            d.add_output()
        });
    }
    let mut i = 0;
    while i < bs.len() {
        if i + 1 < bs.len() && rng.gen_bool(0.1) {
            d.add_edge(bs[i], bs[i + 1]).expect("fresh boundaries");
            i += 2;
        } else {
            let s = pick(rng, &spiders);
            d.add_edge(bs[i], s).expect("fresh boundary");
            i += 1;
        }
    }

    for _ in 0..rng.gen_range(0..=params.max_extra_edges) {
        let a = pick(rng, &spiders);
        let b = pick(rng, &spiders);
        d.add_edge(a, b).expect("spiders are uncapped");
    }
    d
}

/// Removes boundary `b` and wires its neighbor to `target` instead.
pub fn attach(d: &mut Diagram, b: VertexId, target: VertexId) {
    if let Some((e, x)) = d.boundary_neighbor(b) {
        d.remove_edge(e);
        d.remove_vertex(b);
        if x != b {
            d.add_edge(x, target).expect("target is a spider");
        }
    }
}

/// Places `pattern` next to a random context and joins some of the pattern's
/// boundaries to context spiders, leaving at most `max_boundaries` open.
pub fn embed<R: Rng + ?Sized>(
    rng: &mut R,
    pattern: &Diagram,
    context: &Diagram,
    max_boundaries: usize,
) -> Diagram {
    let offset = pattern.vertex_count() as u32;
    let mut d = pattern.tensor(context);
    // the union numbers the pattern's vertices first
    let ctx_spiders: Vec<VertexId> = d
        .vertices()
        .filter(|&(v, k)| v.0 >= offset && k.is_spider())
        .map(|(v, _)| v)
        .collect();
    let pattern_bs: Vec<VertexId> = d
        .inputs()
        .iter()
        .chain(d.outputs())
        .copied()
        .filter(|v| v.0 < offset)
        .collect();
    for b in pattern_bs {
        if ctx_spiders.is_empty() {
            break;
        }
        let open = d.inputs().len() + d.outputs().len();
        if open > max_boundaries || rng.gen_bool(0.5) {
            let t = *ctx_spiders.choose(rng).unwrap();
            attach(&mut d, b, t);
        }
    }
    while d.inputs().len() + d.outputs().len() > max_boundaries {
        let b = d.inputs().first().or(d.outputs().first()).copied().unwrap();
        let p = d.add_vertex(VertexKind::X(Phase::ZERO));
        attach(&mut d, b, p);
    }
    d
}
