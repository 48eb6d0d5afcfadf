//! Isomorphism of diagrams respecting vertex kinds, phases, edge
//! multiplicities and interface order.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Diagram, VertexId, VertexKind};

type Mult = BTreeMap<(VertexId, VertexId), usize>;

fn multiplicities(d: &Diagram) -> Mult {
    let mut m = Mult::new();
    for (_, a, b) in d.edges() {
        *m.entry((a, b)).or_default() += 1;
    }
    m
}

fn mult(m: &Mult, a: VertexId, b: VertexId) -> usize {
    let key = if a <= b { (a, b) } else { (b, a) };
    m.get(&key).copied().unwrap_or(0)
}

struct Search<'a> {
    a: &'a Diagram,
    b: &'a Diagram,
    ma: Mult,
    mb: Mult,
    order: Vec<VertexId>,
    map: BTreeMap<VertexId, VertexId>,
    used: BTreeSet<VertexId>,
}

impl Search<'_> {
    fn consistent(&self, u: VertexId, w: VertexId) -> bool {
        if self.a.kind(u) != self.b.kind(w) || self.a.degree(u) != self.b.degree(w) {
            return false;
        }
        if mult(&self.ma, u, u) != mult(&self.mb, w, w) {
            return false;
        }
        self.map
            .iter()
            .all(|(&x, &y)| mult(&self.ma, u, x) == mult(&self.mb, w, y))
    }

    fn extend(&mut self, depth: usize) -> bool {
        let Some(&u) = self.order.get(depth) else {
            return true;
        };
        let kind = self.a.kind(u);
        let candidates: Vec<VertexId> = self
            .b
            .vertices()
            .filter(|&(w, k)| Some(k) == kind && !self.used.contains(&w))
            .map(|(w, _)| w)
            .collect();
        for w in candidates {
            if !self.consistent(u, w) {
                continue;
            }
            self.map.insert(u, w);
            self.used.insert(w);
            if self.extend(depth + 1) {
                return true;
            }
            self.map.remove(&u);
            self.used.remove(&w);
        }
        false
    }
}

fn signature(d: &Diagram) -> Vec<(VertexKind, usize)> {
    let mut s: Vec<_> = d.vertices().map(|(v, k)| (k, d.degree(v))).collect();
    s.sort();
    s
}

/// Finds a vertex bijection `a → b` preserving kinds, edge multiplicities and
/// the ordered interfaces, if one exists.
pub fn find_isomorphism(a: &Diagram, b: &Diagram) -> Option<BTreeMap<VertexId, VertexId>> {
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.inputs().len() != b.inputs().len()
        || a.outputs().len() != b.outputs().len()
        || signature(a) != signature(b)
    {
        return None;
    }
    let mut s = Search {
        a,
        b,
        ma: multiplicities(a),
        mb: multiplicities(b),
        order: Vec::new(),
        map: BTreeMap::new(),
        used: BTreeSet::new(),
    };
    let fixed: Vec<(VertexId, VertexId)> = a
        .inputs()
        .iter()
        .zip(b.inputs())
        .chain(a.outputs().iter().zip(b.outputs()))
        .map(|(&x, &y)| (x, y))
        .collect();
    for (x, y) in fixed {
        if !s.consistent(x, y) {
            return None;
        }
        s.map.insert(x, y);
        s.used.insert(y);
    }

    // breadth-first from the interface so each new vertex is constrained
    let mut seen: BTreeSet<VertexId> = s.map.keys().copied().collect();
    let mut queue: std::collections::VecDeque<VertexId> = s.map.keys().copied().collect();
    let mut rest = a.vertex_ids().into_iter();
    loop {
        while let Some(v) = queue.pop_front() {
            for w in a.neighbors(v) {
                if seen.insert(w) {
                    s.order.push(w);
                    queue.push_back(w);
                }
            }
        }
        match rest.by_ref().find(|v| !seen.contains(v)) {
            Some(v) => {
                seen.insert(v);
                s.order.push(v);
                queue.push_back(v);
            }
            None => break,
        }
    }

    if s.extend(0) {
        Some(s.map)
    } else {
        None
    }
}

pub fn isomorphic(a: &Diagram, b: &Diagram) -> bool {
    find_isomorphism(a, b).is_some()
}
