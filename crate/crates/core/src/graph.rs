//! Open multigraphs of Z/X spiders, Hadamard nodes, boundaries and scalars.
//!
//! A [`Diagram`] owns its vertices and edges in ordered maps keyed by ids
//! drawn from per-diagram monotone counters, so an id is never reused once a
//! vertex or edge is removed. Edges are unordered pairs; parallel edges and
//! self-loops are allowed on spiders. Inputs and outputs are ordered lists of
//! boundary vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Result, ZxError};
use crate::phase::Phase;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Color {
    Z,
    X,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Z => Color::X,
            Color::X => Color::Z,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Z => "Z",
            Color::X => "X",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum VertexKind {
    Z(Phase),
    X(Phase),
    H,
    Boundary,
    /// The scalar √2.
    Diamond,
}

impl VertexKind {
    pub fn spider(color: Color, phase: Phase) -> VertexKind {
        match color {
            Color::Z => VertexKind::Z(phase),
            Color::X => VertexKind::X(phase),
        }
    }

    pub fn as_spider(&self) -> Option<(Color, Phase)> {
        match *self {
            VertexKind::Z(p) => Some((Color::Z, p)),
            VertexKind::X(p) => Some((Color::X, p)),
            _ => None,
        }
    }

    pub fn is_spider(&self) -> bool {
        self.as_spider().is_some()
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, VertexKind::Boundary)
    }

    /// Maximum degree, if any.
    pub fn degree_cap(&self) -> Option<usize> {
        match self {
            VertexKind::H => Some(2),
            VertexKind::Boundary => Some(1),
            VertexKind::Diamond => Some(0),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            VertexKind::Z(_) => "Z",
            VertexKind::X(_) => "X",
            VertexKind::H => "H",
            VertexKind::Boundary => "B",
            VertexKind::Diamond => "D",
        }
    }
}

/// Which end of the interface a boundary belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Input,
    Output,
}

/// Single-qubit basis points used as states or effects.
///
/// `ZPlus`/`ZMinus` are the computational basis |0⟩/|1⟩ (drawn as X spiders
/// of phase 0/π); `XPlus`/`XMinus` are |+⟩/|−⟩ (Z spiders of phase 0/π).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Point {
    ZPlus,
    ZMinus,
    XPlus,
    XMinus,
}

impl Point {
    pub const ALL: [Point; 4] = [Point::ZPlus, Point::ZMinus, Point::XPlus, Point::XMinus];

    pub fn kind(self) -> VertexKind {
        match self {
            Point::ZPlus => VertexKind::X(Phase::ZERO),
            Point::ZMinus => VertexKind::X(Phase::PI),
            Point::XPlus => VertexKind::Z(Phase::ZERO),
            Point::XMinus => VertexKind::Z(Phase::PI),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Point::ZPlus => "z+",
            Point::ZMinus => "z-",
            Point::XPlus => "x+",
            Point::XMinus => "x-",
        }
    }
}

impl std::str::FromStr for Point {
    type Err = ZxError;
    fn from_str(s: &str) -> Result<Point> {
        match s {
            "z+" => Ok(Point::ZPlus),
            "z-" => Ok(Point::ZMinus),
            "x+" => Ok(Point::XPlus),
            "x-" => Ok(Point::XMinus),
            _ => Err(ZxError::Argument(format!("unknown point `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Diagram {
    vertices: BTreeMap<VertexId, VertexKind>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    inputs: Vec<VertexId>,
    outputs: Vec<VertexId>,
    next_vertex: u32,
    next_edge: u32,
}

impl Diagram {
    pub fn new() -> Diagram {
        Diagram::default()
    }

    pub fn add_vertex(&mut self, kind: VertexKind) -> VertexId {
        let v = VertexId(self.next_vertex);
        self.next_vertex += 1;
        self.vertices.insert(v, kind);
        v
    }

    /// Adds a boundary vertex and appends it to the inputs.
    pub fn add_input(&mut self) -> VertexId {
        let v = self.add_vertex(VertexKind::Boundary);
        self.inputs.push(v);
        v
    }

    /// Adds a boundary vertex and appends it to the outputs.
    pub fn add_output(&mut self) -> VertexId {
        let v = self.add_vertex(VertexKind::Boundary);
        self.outputs.push(v);
        v
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<EdgeId> {
        for v in [a, b] {
            if !self.vertices.contains_key(&v) {
                return Err(ZxError::UnknownVertex(v));
            }
        }
        for v in if a == b { vec![a] } else { vec![a, b] } {
            let kind = self.vertices[&v];
            if let Some(cap) = kind.degree_cap() {
                let extra = if a == b { 2 } else { 1 };
                if self.degree(v) + extra > cap {
                    return Err(ZxError::DegreeCap {
                        vertex: v,
                        kind: kind.name(),
                        cap,
                    });
                }
            }
        }
        let e = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edges.insert(e, if a <= b { (a, b) } else { (b, a) });
        Ok(e)
    }

    /// Removes a vertex with all incident edges and drops it from the interface.
    pub fn remove_vertex(&mut self, v: VertexId) {
        self.vertices.remove(&v);
        self.edges.retain(|_, &mut (a, b)| a != v && b != v);
        self.inputs.retain(|&x| x != v);
        self.outputs.retain(|&x| x != v);
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.remove(&e)
    }

    pub fn set_kind(&mut self, v: VertexId, kind: VertexKind) {
        if let Some(k) = self.vertices.get_mut(&v) {
            *k = kind;
        }
    }

    pub fn kind(&self, v: VertexId) -> Option<VertexKind> {
        self.vertices.get(&v).copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn edge(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, VertexKind)> + '_ {
        self.vertices.iter().map(|(&v, &k)| (v, k))
    }

    pub fn vertex_ids(&self) -> Vec<VertexId> {
        self.vertices.keys().copied().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(a, b))| (e, a, b))
    }

    pub fn inputs(&self) -> &[VertexId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[VertexId] {
        &self.outputs
    }

    /// Replaces the interface lists. Call [`Diagram::validate`] afterwards.
    pub fn with_interface(mut self, inputs: Vec<VertexId>, outputs: Vec<VertexId>) -> Diagram {
        self.inputs = inputs;
        self.outputs = outputs;
        self
    }

    pub fn interface(&self, side: Side) -> &[VertexId] {
        match side {
            Side::Input => &self.inputs,
            Side::Output => &self.outputs,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex count plus edge count; the measure the safe rewrite strategy decreases.
    pub fn size(&self) -> usize {
        self.vertex_count() + self.edge_count()
    }

    /// Incident edges of `v` with the opposite endpoint. A self-loop is listed
    /// twice, once per leg.
    pub fn legs(&self, v: VertexId) -> Vec<(EdgeId, VertexId)> {
        let mut out = Vec::new();
        for (&e, &(a, b)) in &self.edges {
            if a == v {
                out.push((e, b));
            }
            if b == v {
                out.push((e, a));
            }
        }
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .values()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Distinct neighbors of `v` (excluding `v` itself), ascending.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let set: BTreeSet<VertexId> = self
            .legs(v)
            .into_iter()
            .map(|(_, w)| w)
            .filter(|&w| w != v)
            .collect();
        set.into_iter().collect()
    }

    /// Edges joining `a` and `b` (self-loops when `a == b`).
    pub fn edges_between(&self, a: VertexId, b: VertexId) -> Vec<EdgeId> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.edges
            .iter()
            .filter(|(_, &ab)| ab == key)
            .map(|(&e, _)| e)
            .collect()
    }

    /// For a boundary, its single edge and the vertex on the other end.
    pub fn boundary_neighbor(&self, b: VertexId) -> Option<(EdgeId, VertexId)> {
        self.legs(b).into_iter().next()
    }

    /// Checks every structural invariant, reporting the first offending vertex.
    pub fn validate(&self) -> Result<()> {
        self.validate_named(|v| v.to_string())
    }

    /// Like [`Diagram::validate`], naming vertices through `name`.
    pub fn validate_named(&self, name: impl Fn(VertexId) -> String) -> Result<()> {
        let invalid = |v: VertexId, msg: &str| ZxError::Invalid {
            vertex: name(v),
            message: msg.to_string(),
        };
        let mut seen = BTreeSet::new();
        for &v in self.inputs.iter().chain(&self.outputs) {
            match self.vertices.get(&v) {
                None => return Err(ZxError::UnknownVertex(v)),
                Some(VertexKind::Boundary) => {}
                Some(_) => return Err(invalid(v, "interface vertex is not a boundary")),
            }
            if !seen.insert(v) {
                return Err(invalid(
                    v,
                    "boundary listed more than once in the interface",
                ));
            }
        }
        for (&e, &(a, b)) in &self.edges {
            for v in [a, b] {
                if !self.vertices.contains_key(&v) {
                    return Err(ZxError::Invalid {
                        vertex: name(v),
                        message: format!("edge {e:?} references a missing vertex"),
                    });
                }
            }
        }
        for (&v, &kind) in &self.vertices {
            let deg = self.degree(v);
            match kind {
                VertexKind::H if deg != 2 => {
                    return Err(invalid(
                        v,
                        &format!("H vertex has degree {deg}, expected 2"),
                    ))
                }
                VertexKind::Boundary if deg != 1 => {
                    return Err(invalid(
                        v,
                        &format!("boundary has degree {deg}, expected 1"),
                    ))
                }
                VertexKind::Boundary if !seen.contains(&v) => {
                    return Err(invalid(v, "boundary is neither an input nor an output"))
                }
                VertexKind::Diamond if deg != 0 => {
                    return Err(invalid(v, &format!("diamond has degree {deg}, expected 0")))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Copies `other` into `self` with fresh ids, returning the id map. The
    /// interface of `other` is not appended.
    fn absorb(&mut self, other: &Diagram) -> BTreeMap<VertexId, VertexId> {
        let mut map = BTreeMap::new();
        for (&v, &k) in &other.vertices {
            map.insert(v, self.add_vertex(k));
        }
        for &(a, b) in other.edges.values() {
            let e = EdgeId(self.next_edge);
            self.next_edge += 1;
            let (x, y) = (map[&a], map[&b]);
            self.edges.insert(e, if x <= y { (x, y) } else { (y, x) });
        }
        map
    }

    /// `second ∘ first`: the outputs of `first` are joined, in order, to the
    /// inputs of `second`.
    pub fn compose_sequential(first: &Diagram, second: &Diagram) -> Result<Diagram> {
        if first.outputs.len() != second.inputs.len() {
            return Err(ZxError::Arity {
                expected: first.outputs.len(),
                found: second.inputs.len(),
            });
        }
        let mut d = Diagram::new();
        let m1 = d.absorb(first);
        let m2 = d.absorb(second);
        d.inputs = first.inputs.iter().map(|v| m1[v]).collect();
        d.outputs = second.outputs.iter().map(|v| m2[v]).collect();
        let pairs: Vec<(VertexId, VertexId)> = first
            .outputs
            .iter()
            .zip(&second.inputs)
            .map(|(o, i)| (m1[o], m2[i]))
            .collect();
        for (o, i) in pairs {
            d.join_boundaries(o, i);
        }
        Ok(d)
    }

    /// Deletes two boundary vertices and connects whatever they were attached to.
    fn join_boundaries(&mut self, o: VertexId, i: VertexId) {
        let (eo, x) = self.boundary_neighbor(o).expect("boundary has an edge");
        let (ei, y) = self.boundary_neighbor(i).expect("boundary has an edge");
        self.remove_edge(eo);
        if ei != eo {
            self.remove_edge(ei);
        }
        self.vertices.remove(&o);
        self.vertices.remove(&i);
        if x == i {
            // o and i were wired to each other: a closed loop, dimension 2.
            self.add_vertex(VertexKind::Diamond);
            self.add_vertex(VertexKind::Diamond);
        } else {
            let e = EdgeId(self.next_edge);
            self.next_edge += 1;
            self.edges.insert(e, if x <= y { (x, y) } else { (y, x) });
        }
    }

    /// Disjoint union; interfaces are concatenated left then right.
    pub fn compose_parallel(left: &Diagram, right: &Diagram) -> Diagram {
        let mut d = Diagram::new();
        let m1 = d.absorb(left);
        let m2 = d.absorb(right);
        d.inputs = left.inputs.iter().map(|v| m1[v]).collect();
        d.inputs.extend(right.inputs.iter().map(|v| m2[v]));
        d.outputs = left.outputs.iter().map(|v| m1[v]).collect();
        d.outputs.extend(right.outputs.iter().map(|v| m2[v]));
        d
    }

    /// `self` then `next`, see [`Diagram::compose_sequential`].
    pub fn then(&self, next: &Diagram) -> Result<Diagram> {
        Diagram::compose_sequential(self, next)
    }

    /// `self ⊗ right`.
    pub fn tensor(&self, right: &Diagram) -> Diagram {
        Diagram::compose_parallel(self, right)
    }

    /// Replaces the boundary at `position` on `side` by a basis point.
    pub fn plug(&self, side: Side, position: usize, point: Point) -> Result<Diagram> {
        let list = self.interface(side);
        let b = *list.get(position).ok_or(ZxError::OutOfRange {
            what: "interface",
            index: position,
            len: list.len(),
        })?;
        let mut d = self.clone();
        let (e, x) = d.boundary_neighbor(b).ok_or_else(|| ZxError::Invalid {
            vertex: b.to_string(),
            message: "boundary has no edge".into(),
        })?;
        d.remove_edge(e);
        d.remove_vertex(b);
        let p = d.add_vertex(point.kind());
        d.add_edge(p, x)?;
        Ok(d)
    }

    /// Rebuilds the diagram assigning ids `0..n` in the given vertex order,
    /// which must be a permutation of the current vertex ids.
    pub fn renumbered(&self, order: &[VertexId]) -> Result<Diagram> {
        if order.len() != self.vertices.len() {
            return Err(ZxError::Arity {
                expected: self.vertices.len(),
                found: order.len(),
            });
        }
        let mut d = Diagram::new();
        let mut map = BTreeMap::new();
        for &v in order {
            let k = self.kind(v).ok_or(ZxError::UnknownVertex(v))?;
            if map.insert(v, d.add_vertex(k)).is_some() {
                return Err(ZxError::Argument(format!("{v} repeated in order")));
            }
        }
        for &(a, b) in self.edges.values() {
            let e = EdgeId(d.next_edge);
            d.next_edge += 1;
            let (x, y) = (map[&a], map[&b]);
            d.edges.insert(e, if x <= y { (x, y) } else { (y, x) });
        }
        d.inputs = self.inputs.iter().map(|v| map[v]).collect();
        d.outputs = self.outputs.iter().map(|v| map[v]).collect();
        Ok(d)
    }

    /// Connected components, each as an ascending vertex set, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.vertices.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !comp.insert(v) {
                    continue;
                }
                for w in self.neighbors(v) {
                    if !comp.contains(&w) {
                        stack.push(w);
                    }
                }
            }
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// The subdiagram induced on `keep`, with interface restricted accordingly.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Diagram {
        let mut d = self.clone();
        d.vertices.retain(|v, _| keep.contains(v));
        d.edges
            .retain(|_, (a, b)| keep.contains(a) && keep.contains(b));
        d.inputs.retain(|v| keep.contains(v));
        d.outputs.retain(|v| keep.contains(v));
        d
    }

    /// The next vertex id this diagram would hand out.
    pub fn peek_next_vertex(&self) -> VertexId {
        VertexId(self.next_vertex)
    }
}
