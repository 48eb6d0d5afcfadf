//! Matchers and appliers for each rule.

use std::collections::BTreeSet;

use crate::error::{Result, ZxError};
use crate::graph::{Color, Diagram, EdgeId, VertexId, VertexKind};
use crate::phase::Phase;
use crate::semantics;

use super::{Applied, Direction, Match, Rule, RuleName, ScalarMode};

/// Closed components up to this many vertices may be deleted as scalars.
pub(crate) const SCALAR_COMPONENT_MAX: usize = 8;
/// Maximum unfusion arity enumerated by `S1^-1`.
const UNFUSE_MAX_LEGS: usize = 4;

fn spider(d: &Diagram, v: VertexId) -> Option<(Color, Phase)> {
    d.kind(v).and_then(|k| k.as_spider())
}

fn has_self_loop(d: &Diagram, v: VertexId) -> bool {
    !d.edges_between(v, v).is_empty()
}

/// Legs of `v` that are not self-loops, as (edge, other end).
fn plain_legs(d: &Diagram, v: VertexId) -> Vec<(EdgeId, VertexId)> {
    d.legs(v).into_iter().filter(|&(_, w)| w != v).collect()
}

fn link(d: &mut Diagram, a: VertexId, b: VertexId) -> Result<EdgeId> {
    d.add_edge(a, b)
}

/// Puts a degree-2 spider on edge `e`, returning it.
fn insert_on_edge(d: &mut Diagram, e: EdgeId, kind: VertexKind) -> Result<VertexId> {
    let (a, b) = d.remove_edge(e).expect("edge exists");
    let w = d.add_vertex(kind);
    link(d, a, w)?;
    link(d, w, b)?;
    Ok(w)
}

fn exact(diagram: Diagram) -> Applied {
    Applied {
        diagram,
        sqrt2_power: Some(0),
    }
}

struct Check<'a> {
    m: &'a Match,
}

impl Check<'_> {
    fn fail(&self, reason: impl Into<String>) -> ZxError {
        ZxError::StaleMatch {
            rule: self.m.rule.to_string(),
            reason: reason.into(),
        }
    }

    fn ensure(&self, cond: bool, reason: &str) -> Result<()> {
        if cond {
            Ok(())
        } else {
            Err(self.fail(reason))
        }
    }

    fn role(&self, name: &str) -> Result<VertexId> {
        self.m
            .role(name)
            .ok_or_else(|| self.fail(format!("missing role `{name}`")))
    }

    fn spider(&self, d: &Diagram, v: VertexId) -> Result<(Color, Phase)> {
        spider(d, v).ok_or_else(|| self.fail(format!("{v} is not a spider")))
    }
}

pub(crate) fn matches(rule: Rule, d: &Diagram, mode: ScalarMode) -> Vec<Match> {
    use Direction::*;
    match (rule.name, rule.direction) {
        (RuleName::S1, Forward) => s1_matches(d, rule),
        (RuleName::S1, Backward) => s1_back_matches(d, rule),
        (RuleName::S2a, Forward) => s2a_matches(d, rule),
        (RuleName::S2a, Backward) => s2a_back_matches(d, rule),
        (RuleName::S2b, Forward) => s2b_matches(d, rule),
        (RuleName::B1, Forward) => b1_matches(d, rule),
        (RuleName::B2, Forward) => b2_matches(d, rule),
        (RuleName::K1, Forward) => pi_push_matches(d, rule, PiTarget::PhaseZero),
        (RuleName::K2, Forward) => pi_push_matches(d, rule, PiTarget::DegreeTwo),
        (RuleName::A, Forward) => pi_push_matches(d, rule, PiTarget::Any),
        (RuleName::C, Forward) => c_matches(d, rule),
        (RuleName::C, Backward) => c_back_matches(d, rule),
        (RuleName::D1, Forward) => d1_matches(d, rule, mode),
        (RuleName::D2, Forward) => d2_matches(d, rule, mode),
        (RuleName::E, Forward) => e_matches(d, rule),
        (RuleName::Hopf, Forward) => hopf_matches(d, rule),
        _ => Vec::new(),
    }
}

pub(crate) fn apply(d: &Diagram, m: &Match) -> Result<Applied> {
    use Direction::*;
    let c = Check { m };
    for v in m.vertices() {
        if !d.contains(v) {
            return Err(c.fail(format!("{v} no longer exists")));
        }
    }
    match (m.rule.name, m.rule.direction) {
        (RuleName::S1, Forward) => s1_apply(d, &c),
        (RuleName::S1, Backward) => s1_back_apply(d, &c),
        (RuleName::S2a, Forward) => s2a_apply(d, &c),
        (RuleName::S2a, Backward) => s2a_back_apply(d, &c),
        (RuleName::S2b, Forward) => s2b_apply(d, &c),
        (RuleName::B1, Forward) => b1_apply(d, &c),
        (RuleName::B2, Forward) => b2_apply(d, &c),
        (RuleName::K1, Forward) => pi_push_apply(d, &c, PiTarget::PhaseZero),
        (RuleName::K2, Forward) => k2_apply(d, &c),
        (RuleName::A, Forward) => pi_push_apply(d, &c, PiTarget::Any),
        (RuleName::C, Forward) => c_apply(d, &c),
        (RuleName::C, Backward) => c_back_apply(d, &c),
        (RuleName::D1, Forward) => d1_apply(d, &c),
        (RuleName::D2, Forward) => d2_apply(d, &c),
        (RuleName::E, Forward) => e_apply(d, &c),
        (RuleName::Hopf, Forward) => hopf_apply(d, &c),
        _ => Err(c.fail("rule has no such direction")),
    }
}

// ---------------------------------------------------------------- S1

fn s1_matches(d: &Diagram, rule: Rule) -> Vec<Match> {
    let mut out = Vec::new();
    for (a, ka) in d.vertices() {
        let Some((ca, _)) = ka.as_spider() else {
            continue;
        };
        if has_self_loop(d, a) {
            out.push(Match::new(rule, vec![("v", a)]));
        }
        for b in d.neighbors(a) {
            if b > a && spider(d, b).is_some_and(|(cb, _)| cb == ca) {
                out.push(Match::new(rule, vec![("a", a), ("b", b)]));
            }
        }
    }
    out
}

fn s1_apply(d: &Diagram, c: &Check) -> Result<Applied> {
    let mut out = d.clone();
    if let Some(v) = c.m.role("v") {
        let loops = d.edges_between(v, v);
        c.spider(d, v)?;
        c.ensure(!loops.is_empty(), "spider has no self-loop")?;
        for e in loops {
            out.remove_edge(e);
        }
        return Ok(exact(out));
    }
    let (a, b) = (c.role("a")?, c.role("b")?);
    let (ca, pa) = c.spider(d, a)?;
    let (cb, pb) = c.spider(d, b)?;
    c.ensure(a != b && ca == cb, "spiders differ in color")?;
    let between = d.edges_between(a, b);
    c.ensure(!between.is_empty(), "spiders are not adjacent")?;
    for e in between {
        out.remove_edge(e);
    }
    let incident: Vec<(EdgeId, VertexId, VertexId)> =
        out.edges().filter(|&(_, x, y)| x == b || y == b).collect();
    for (e, x, y) in incident {
        out.remove_edge(e);
        let x = if x == b { a } else { x };
        let y = if y == b { a } else { y };
        link(&mut out, x, y)?;
    }
    out.remove_vertex(b);
    out.set_kind(a, VertexKind::spider(ca, pa + pb));
    Ok(exact(out))
}

fn s1_back_matches(d: &Diagram, rule: Rule) -> Vec<Match> {
    let mut out = Vec::new();
    for (v, k) in d.vertices() {
        if !k.is_spider() {
            continue;
        }
        let legs: Vec<EdgeId> = plain_legs(d, v).into_iter().map(|(e, _)| e).collect();
        if legs.len() > UNFUSE_MAX_LEGS {
            continue;
        }
        for mask in 0u32..1 << legs.len() {
            let chosen = (0..legs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| legs[i])
                .collect();
            out.push(Match {
                legs: chosen,
                phase: Some(Phase::ZERO),
                ..Match::new(rule, vec![("v", v)])
            });
        }
    }
    out
}

/// Builds an unfusion match moving `legs` and `phase` onto a new spider.
pub fn unfuse(v: VertexId, legs: Vec<EdgeId>, phase: Phase) -> Match {
    Match {
        legs,
        phase: Some(phase),
        ..Match::new(Rule::backward(RuleName::S1), vec![("v", v)])
    }
}

fn s1_back_apply(d: &Diagram, c: &Check) -> Result<Applied> {
    let v = c.role("v")?;
    let (color, alpha) = c.spider(d, v)?;
    let beta = c.m.phase.unwrap_or(Phase::ZERO);
    let legs: BTreeSet<EdgeId> = c.m.legs.iter().copied().collect();
    c.ensure(legs.len() == c.m.legs.len(), "repeated leg")?;
    for &e in &legs {
        let ok = d.edge(e).is_some_and(|(x, y)| (x == v) != (y == v));
        c.ensure(ok, "leg is not a plain edge of the spider")?;
    }
    let mut out = d.clone();
    let w = out.add_vertex(VertexKind::spider(color, beta));
    out.set_kind(v, VertexKind::spider(color, alpha - beta));
    for e in legs {
        let (x, y) = out.remove_edge(e).expect("checked");
        let other = if x == v { y } else { x };
        link(&mut out, w, other)?;
    }
    link(&mut out, v, w)?;
    Ok(exact(out))
}

// ---------------------------------------------------------------- S2

fn is_identity_spider(d: &Diagram, v: VertexId) -> bool {
    spider(d, v).is_some_and(|(_, p)| p.is_zero()) && d.degree(v) == 2 && !has_self_loop(d, v)
}

fn s2a_matches(d: &Diagram, rule: Rule) -> Vec<Match> {
    d.vertex_ids()
        .into_iter()
        .filter(|&v| is_identity_spider(d, v))
        .map(|v| Match::new(rule, vec![("v", v)]))
        .collect()
}

fn s2a_apply(d: &Diagram, c: &Check) -> Result<Applied> {
    let v = c.role("v")?;
    c.ensure(is_identity_spider(d, v), "not a phase-0 degree-2 spider")?;
    let legs = d.legs(v);
    let mut out = d.clone();
    out.remove_vertex(v);
    link(&mut out, legs[0].1, legs[1].1)?;
    Ok(exact(out))
}

fn s2a_back_matches(d: &Diagram, rule: Rule) -> Vec<Match> {
    let mut out = Vec::new();
    for (e, a, b) in d.edges() {
        for color in [Color::Z, Color::X] {
            out.push(Match {
                legs: vec![e],
                color: Some(color),
                ..Match::new(rule, vec![("a", a), ("b", b)])
            });
        }
    }
    out
}

/// Builds a match inserting a phase-0 spider of `color` on edge `e`.
pub fn insert_identity(d: &Diagram, e: EdgeId, color: Color) -> Option<Match> {
    let (a, b) = d.edge(e)?;
    Some(Match {
        legs: vec![e],
        color: Some(color),
        ..Match::new(Rule::backward(RuleName::S2a), vec![("a", a), ("b", b)])
    })
}

fn s2a_back_apply(d: &Diagram, c: &Check) -> Result<Applied> {
    let (a, b) = (c.role("a")?, c.role("b")?);
    let &[e] = c.m.legs.as_slice() else {
        return Err(c.fail("expected one edge"));
    };
    c.ensure(d.edge(e) == Some((a.min(b), a.max(b))), "edge changed")?;
    let color = c.m.color.ok_or_else(|| c.fail("missing color"))?;
    let mut out = d.clone();
    insert_on_edge(&mut out, e, VertexKind::spider(color, Phase::ZERO))?;
    Ok(exact(out))
}

fn s2b_matches(d: &Diagram, rule: Rule) -> Vec<Match> {
    let mut out = Vec::new();
    for a in d.vertex_ids() {
        if !is_identity_spider(d, a) {
            continue;
        }
        for b in d.neighbors(a) {
            if b > a && is_identity_spider(d, b) && d.edges_between(a, b).len() == 1 {
                out.push(Match::new(rule, vec![("a", a), ("b", b)]));
            }
        }
    }
    out
}

fn s2b_apply(d: &Diagram, c: &Check) -> Result<Applied> {
    let (a, b) = (c.role("a")?, c.role("b")?);
    c.ensure(
        a != b && is_identity_spider(d, a) && is_identity_spider(d, b),
        "not two phase-0 degree-2 spiders",
    )?;
    c.ensure(
        d.edges_between(a, b).len() == 1,
        "spiders not joined by one wire",
    )?;
    let x = d.legs(a).into_iter().find(|&(_, w)| w != b).unwrap().1;
    let y = d.legs(b).into_iter().find(|&(_, w)| w != a).unwrap().1;
    let mut out = d.clone();
    out.remove_vertex(a);
    out.remove_vertex(b);
    link(&mut out, x, y)?;
    Ok(exact(out))
}

// ---------------------------------------------------------------- B1, B2

fn b1_target(d: &Diagram, p: VertexId) -> Option<VertexId> {
    let (cp, pp) = spider(d, p)?;
    if !pp.is_zero() || d.degree(p) != 1 {
        return None;
    }
    let (_, s) = d.legs(p)[0];
    let (cs, ps) = spider(d, s)?;
    (cs != cp && ps.is_zero() && !has_self_loop(d, s)).then_some(s)
}

fn b1_matches(d: &Diagram, rule: Rule) -> Vec<Match> {
    d.vertex_ids()
        .into_iter()
        .filter_map(|p| {
            b1_target(d, p).map(|s| Match::new(rule, vec![("point", p), ("target", s)]))
        })
        .collect()
}

fn b1_apply(d: &Diagram, c: &Check) -> Result<Applied> {
    let (p, s) = (c.role("point")?, c.role("target")?);
    c.ensure(
        b1_target(d, p) == Some(s),
        "point no longer plugged into a copyable spider",
    )?;
    let (color, _) = c.spider(d, p)?;
    let n = d.degree(s) as i32;
    let mut out = d.clone();
    let others: Vec<VertexId> = d
        .legs(s)
        .into_iter()
        .map(|(_, x)| x)
        .filter(|&x| x != p)
        .collect();
    out.remove_vertex(p);
    out.remove_vertex(s);
    for x in others {
        let q = out.add_vertex(VertexKind::spider(color, Phase::ZERO));
        link(&mut out, q, x)?;
    }
    Ok(Applied {
        diagram: out,
        sqrt2_power: Some(2 - n),
    })
}

fn is_b2_node(d: &Diagram, v: VertexId, color: Color) -> bool {
    spider(d, v) == Some((color, Phase::ZERO)) && d.degree(v) >= 2 && !has_self_loop(d, v)
}

/// Legs of a B2 node leaving the pattern, as (edge, other end).
fn b2_externals(d: &Diagram, v: VertexId, pattern: &[VertexId]) -> Vec<(EdgeId, VertexId)> {
    d.legs(v)
        .into_iter()
        .filter(|(_, w)| !pattern.contains(w))
        .collect()
}

fn b2_valid(d: &Diagram, z1: VertexId, z2: VertexId, x1: VertexId, x2: VertexId) -> bool {
    let pattern = [z1, z2, x1, x2];
    is_b2_node(d, z1, Color::Z)
        && is_b2_node(d, z2, Color::Z)
        && is_b2_node(d, x1, Color::X)
        && is_b2_node(d, x2, Color::X)
        && z1 != z2
        && x1 != x2
        && [(z1, x1), (z1, x2), (z2, x1), (z2, x2)]
            .iter()
            .all(|&(a, b)| d.edges_between(a, b).len() == 1)
        && pattern
            .iter()
            .all(|&v| b2_externals(d, v, &pattern).len() + 2 == d.degree(v))
}

fn b2_matches(d: &Diagram, rule: Rule) -> Vec<Match> {
    let mut out = Vec::new();
    for z1 in d.vertex_ids() {
        if !is_b2_node(d, z1, Color::Z) {
            continue;
        }
        let xs: Vec<VertexId> = d
            .neighbors(z1)
            .into_iter()
            .filter(|&x| is_b2_node(d, x, Color::X))
            .collect();
        for (i, &x1) in xs.iter().enumerate() {
            for &x2 in &xs[i + 1..] {
                for z2 in d.neighbors(x1) {
                    if z2 > z1 && b2_valid(d, z1, z2, x1, x2) {
                        out.push(Match::new(
                            rule,
                            vec![("z1", z1), ("z2", z2), ("x1", x1), ("x2", x2)],
                        ));
                    }
                }
            }
        }
    }
    out
}

/// A node with a single external leg is replaced by that leg; any other node
/// stays behind as a phase-0 spider holding its external legs.
fn b2_apply(d: &Diagram, c: &Check) -> Result<Applied> {
    let (z1, z2, x1, x2) = (c.role("z1")?, c.role("z2")?, c.role("x1")?, c.role("x2")?);
    c.ensure(b2_valid(d, z1, z2, x1, x2), "bialgebra pattern broken")?;
    let pattern = [z1, z2, x1, x2];
    let mut out = d.clone();
    let nx = out.add_vertex(VertexKind::X(Phase::ZERO));
    let nz = out.add_vertex(VertexKind::Z(Phase::ZERO));
    link(&mut out, nx, nz)?;
    for (v, hub) in [(z1, nx), (z2, nx), (x1, nz), (x2, nz)] {
        let ext = b2_externals(d, v, &pattern);
        if let [(_, w)] = ext[..] {
            out.remove_vertex(v);
            link(&mut out, hub, w)?;
        } else {
            for (e, w) in d.legs(v) {
                if pattern.contains(&w) {
                    out.remove_edge(e);
                }
            }
            link(&mut out, hub, v)?;
        }
    }
    Ok(Applied {
        diagram: out,
        sqrt2_power: Some(-1),
    })
}

// ---------------------------------------------------------------- K1, K2, A

#[derive(Clone, Copy, PartialEq, Eq)]
enum PiTarget {
    /// K1: phase-0 spider of any degree.
    PhaseZero,
    /// K2: degree-2 spider of any phase.
    DegreeTwo,
    /// A: any spider.
    Any,
}

/// A degree-2 π spider with two distinct neighbors.
fn pi_wire(d: &Diagram, p: VertexId) -> Option<(Color, [VertexId; 2])> {
    let (c, ph) = spider(d, p)?;
    if !ph.is_pi() || d.degree(p) != 2 || has_self_loop(d, p) {
        return None;
    }
    let legs = d.legs(p);
    (legs[0].1 != legs[1].1).then_some((c, [legs[0].1, legs[1].1]))
}

fn pi_push_valid(d: &Diagram, p: VertexId, s: VertexId, target: PiTarget) -> bool {
    let Some((cp, ends)) = pi_wire(d, p) else {
        return false;
    };
    let Some((cs, ps)) = spider(d, s) else {
        return false;
    };
    if !ends.contains(&s) || cs == cp || has_self_loop(d, s) {
        return false;
    }
    match target {
        PiTarget::PhaseZero => ps.is_zero(),
        PiTarget::DegreeTwo => d.degree(s) == 2,
        PiTarget::Any => true,
    }
}

fn pi_push_matches(d: &Diagram, rule: Rule, target: PiTarget) -> Vec<Match> {
    let mut out = Vec::new();
    for p in d.vertex_ids() {
        let Some((_, ends)) = pi_wire(d, p) else {
            continue;
        };
        for s in ends {
            if pi_push_valid(d, p, s, target) {
                out.push(Match::new(rule, vec![("pi", p), ("target", s)]));
            }
        }
    }
    out
}

/// Removes the π wire `p` next to `s`, negates the phase of `s` and puts a π
/// of the same color on each of its other legs.
fn pi_push_apply(d: &Diagram, c: &Check, target: PiTarget) -> Result<Applied> {
    let (p, s) = (c.role("pi")?, c.role("target")?);
    c.ensure(
        pi_push_valid(d, p, s, target),
        "π no longer next to a suitable spider",
    )?;
    let (cp, ends) = pi_wire(d, p).unwrap();
    let (cs, alpha) = spider(d, s).unwrap();
    let y = if ends[0] == s { ends[1] } else { ends[0] };
    let mut out = d.clone();
    out.remove_vertex(p);
    let kept = link(&mut out, y, s)?;
    out.set_kind(s, VertexKind::spider(cs, -alpha));
    for (e, _) in out.legs(s) {
        if e != kept {
            insert_on_edge(&mut out, e, VertexKind::spider(cp, Phase::PI))?;
        }
    }
    Ok(Applied {
        diagram: out,
        sqrt2_power: alpha.is_zero().then_some(0),
    })
}

fn k2_apply(d: &Diagram, c: &Check) -> Result<Applied> {
    let (p, s) = (c.role("pi")?, c.role("target")?);
    c.ensure(
        pi_push_valid(d, p, s, PiTarget::DegreeTwo),
        "π no longer next to a degree-2 spider",
    )?;
    c.ensure(
        d.edges_between(p, s).len() == 1,
        "spiders share more than one wire",
    )?;
    let (cp, _) = spider(d, p).unwrap();
    let (cs, alpha) = spider(d, s).unwrap();
    let mut out = d.clone();
    out.set_kind(p, VertexKind::spider(cs, -alpha));
    out.set_kind(s, VertexKind::spider(cp, Phase::PI));
    Ok(Applied {
        diagram: out,
        sqrt2_power: alpha.is_zero().then_some(0),
    })
}

// ---------------------------------------------------------------- C

fn c_matches(d: &Diagram, rule: Rule) -> Vec<Match> {
    d.vertices()
        .filter(|(_, k)| k.is_spider())
        .map(|(v, _)| Match::new(rule, vec![("v", v)]))
        .collect()
}

fn c_apply(d: &Diagram, c: &Check) -> Result<Applied> {
    let v = c.role("v")?;
    let (color, phase) = c.spider(d, v)?;
    let mut out = d.clone();
    out.set_kind(v, VertexKind::spider(color.flip(), phase));
    let incident: Vec<(EdgeId, VertexId, VertexId)> =
        d.edges().filter(|&(_, x, y)| x == v || y == v).collect();
    for (e, x, y) in incident {
        if x == y {
            let h1 = insert_on_edge(&mut out, e, VertexKind::H)?;
            let e2 = out.edges_between(h1, v)[0];
            insert_on_edge(&mut out, e2, VertexKind::H)?;
        } else {
            insert_on_edge(&mut out, e, VertexKind::H)?;
        }
    }
    Ok(exact(out))
}

/// For a spider whose every leg enters a distinct H, the H vertices and what
/// lies beyond each.
fn hadamard_ring(d: &Diagram, v: VertexId) -> Option<Vec<(VertexId, VertexId)>> {
    spider(d, v)?;
    if has_self_loop(d, v) || d.degree(v) == 0 {
        return None;
    }
    let hs: Vec<VertexId> = d.legs(v).into_iter().map(|(_, h)| h).collect();
    let set: BTreeSet<VertexId> = hs.iter().copied().collect();
    if set.len() != hs.len() {
        return None;
    }
    let mut out = Vec::new();
    for h in hs {
        if d.kind(h) != Some(VertexKind::H) {
            return None;
        }
        let beyond = d.legs(h).into_iter().map(|(_, x)| x).find(|&x| x != v)?;
        if set.contains(&beyond) {
            return None;
        }
        out.push((h, beyond));
    }
    Some(out)
}

fn c_back_matches(d: &Diagram, rule: Rule) -> Vec<Match> {
    d.vertex_ids()
        .into_iter()
        .filter(|&v| hadamard_ring(d, v).is_some())
        .map(|v| Match::new(rule, vec![("v", v)]))
        .collect()
}

fn c_back_apply(d: &Diagram, c: &Check) -> Result<Applied> {
    let v = c.role("v")?;
    let ring =
        hadamard_ring(d, v).ok_or_else(|| c.fail("not every leg passes through its own H"))?;
    let (color, phase) = spider(d, v).unwrap();
    let mut out = d.clone();
    for (h, beyond) in ring {
        out.remove_vertex(h);
        link(&mut out, v, beyond)?;
    }
    out.set_kind(v, VertexKind::spider(color.flip(), phase));
    Ok(exact(out))
}

// ---------------------------------------------------------------- D1, D2

fn point_pair(d: &Diagram, z: VertexId, x: VertexId) -> bool {
    d.kind(z) == Some(VertexKind::Z(Phase::ZERO))
        && d.kind(x) == Some(VertexKind::X(Phase::ZERO))
        && d.degree(z) == 1
        && d.degree(x) == 1
        && d.edges_between(z, x).len() == 1
}

/// Closed components small enough to evaluate, with a nonzero value and at
/// least one non-diamond vertex.
fn deletable_component(d: &Diagram, comp: &BTreeSet<VertexId>) -> bool {
    if comp.len() > SCALAR_COMPONENT_MAX {
        return false;
    }
    let kinds: Vec<VertexKind> = comp.iter().filter_map(|&v| d.kind(v)).collect();
    if kinds.iter().any(|k| k.is_boundary()) || kinds.iter().all(|&k| k == VertexKind::Diamond) {
        return false;
    }
    semantics::evaluate(&d.induced(comp)).is_ok_and(|m| m.get(0, 0).norm() > 1e-9)
}

fn d1_matches(d: &Diagram, rule: Rule, mode: ScalarMode) -> Vec<Match> {
    let mut out = Vec::new();
    for z in d.vertex_ids() {
        for x in d.neighbors(z) {
            if point_pair(d, z, x) {
                out.push(Match::new(rule, vec![("z", z), ("x", x)]));
            }
        }
    }
    if mode == ScalarMode::UpToScalar {
        for comp in d.components() {
            if deletable_component(d, &comp) {
                out.push(Match::new(
                    rule,
                    comp.into_iter().map(|v| ("member", v)).collect(),
                ));
            }
        }
    }
    out
}

fn d1_apply(d: &Diagram, c: &Check) -> Result<Applied> {
    let mut out = d.clone();
    if c.m.role("member").is_some() {
        let comp: BTreeSet<VertexId> = c.m.vertices().into_iter().collect();
        let start = *comp.iter().next().unwrap();
        let actual = d.components().into_iter().find(|k| k.contains(&start));
        c.ensure(actual.as_ref() == Some(&comp), "component changed")?;
        c.ensure(
            deletable_component(d, &comp),
            "component is not a deletable scalar",
        )?;
        for v in comp {
            out.remove_vertex(v);
        }
        return Ok(Applied {
            diagram: out,
            sqrt2_power: None,
        });
    }
    let (z, x) = (c.role("z")?, c.role("x")?);
    c.ensure(point_pair(d, z, x), "not a closed Z/X point pair")?;
    out.remove_vertex(z);
    out.remove_vertex(x);
    out.add_vertex(VertexKind::Diamond);
    Ok(exact(out))
}

fn closed_loop(d: &Diagram, v: VertexId) -> bool {
    spider(d, v).is_some_and(|(_, p)| p.is_zero())
        && d.degree(v) == 2
        && d.edges_between(v, v).len() == 1
}

fn d2_matches(d: &Diagram, rule: Rule, mode: ScalarMode) -> Vec<Match> {
    let mut out = Vec::new();
    for (v, k) in d.vertices() {
        if closed_loop(d, v) {
            out.push(Match::new(rule, vec![("loop", v)]));
        }
        if k == VertexKind::Diamond && mode == ScalarMode::UpToScalar {
            out.push(Match::new(rule, vec![("diamond", v)]));
        }
    }
    out
}

fn d2_apply(d: &Diagram, c: &Check) -> Result<Applied> {
    let mut out = d.clone();
    if let Some(v) = c.m.role("diamond") {
        c.ensure(d.kind(v) == Some(VertexKind::Diamond), "not a diamond")?;
        out.remove_vertex(v);
        return Ok(Applied {
            diagram: out,
            sqrt2_power: Some(1),
        });
    }
    let v = c.role("loop")?;
    c.ensure(closed_loop(d, v), "not a closed phase-0 loop")?;
    out.remove_vertex(v);
    out.add_vertex(VertexKind::Diamond);
    out.add_vertex(VertexKind::Diamond);
    Ok(exact(out))
}

// ---------------------------------------------------------------- E, HOPF

fn e_valid(d: &Diagram, x: VertexId, a: VertexId, b: VertexId) -> bool {
    let Some((Color::X, beta)) = spider(d, x) else {
        return false;
    };
    let (Some((Color::Z, pa)), Some((Color::Z, pb))) = (spider(d, a), spider(d, b)) else {
        return false;
    };
    beta.is_pauli()
        && a != b
        && d.degree(a) == 1
        && d.degree(b) == 1
        && d.edges_between(a, x).len() == 1
        && d.edges_between(b, x).len() == 1
        && pb == pa + Phase::PI
        && !(pa + pa).is_zero()
}

fn e_matches(d: &Diagram, rule: Rule) -> Vec<Match> {
    let mut out = Vec::new();
    for x in d.vertex_ids() {
        if !spider(d, x).is_some_and(|(c, p)| c == Color::X && p.is_pauli()) {
            continue;
        }
        let ns = d.neighbors(x);
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if e_valid(d, x, a, b) {
                    out.push(Match::new(rule, vec![("x", x), ("a", a), ("b", b)]));
                }
            }
        }
    }
    out
}

fn e_apply(d: &Diagram, c: &Check) -> Result<Applied> {
    let (x, a, b) = (c.role("x")?, c.role("a")?, c.role("b")?);
    c.ensure(e_valid(d, x, a, b), "supplementary pair no longer present")?;
    let mut out = d.clone();
    out.remove_vertex(a);
    out.remove_vertex(b);
    Ok(Applied {
        diagram: out,
        sqrt2_power: None,
    })
}

fn hopf_valid(d: &Diagram, a: VertexId, b: VertexId) -> bool {
    matches!(spider(d, a), Some((Color::Z, _)))
        && matches!(spider(d, b), Some((Color::X, _)))
        && d.edges_between(a, b).len() == 2
}

fn hopf_matches(d: &Diagram, rule: Rule) -> Vec<Match> {
    let mut out = Vec::new();
    for a in d.vertex_ids() {
        for b in d.neighbors(a) {
            if hopf_valid(d, a, b) {
                out.push(Match::new(rule, vec![("z", a), ("x", b)]));
            }
        }
    }
    out
}

fn hopf_apply(d: &Diagram, c: &Check) -> Result<Applied> {
    let (a, b) = (c.role("z")?, c.role("x")?);
    c.ensure(
        hopf_valid(d, a, b),
        "spiders no longer share exactly two wires",
    )?;
    let mut out = d.clone();
    for e in d.edges_between(a, b) {
        out.remove_edge(e);
    }
    Ok(Applied {
        diagram: out,
        sqrt2_power: Some(-2),
    })
}
