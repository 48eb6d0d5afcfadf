//! Scripted derivations replayed rule by rule.
//!
//! Each script locates its redexes structurally (by kind and adjacency) in the
//! current diagram, so a transcription error in a rule shows up as a failed
//! step rather than a silently different result.

use crate::error::{Result, ZxError};
use crate::graph::{Color, Diagram, Point, Side, VertexId, VertexKind};
use crate::phase::Phase;
use crate::protocols::{ghz_state, w_state};
use crate::semantics::{equal_up_to_scalar, evaluate, EqualityVerdict, Matrix, C, DEFAULT_TOL};

use super::{apply, find_matches, insert_identity, unfuse, Match, Rule, RuleName, Trace};

pub const DERIVATIONS: [&str; 7] = [
    "hopf",
    "rule_a",
    "ghz_plug0",
    "ghz_plug1",
    "w_plug0",
    "w_plug1",
    "qkd_core",
];

/// Phase of the spider in the `rule_a` derivation.
fn rule_a_phase() -> Phase {
    Phase::new(1, 3)
}

#[derive(Clone, Debug)]
pub struct Derivation {
    pub name: &'static str,
    pub start: Diagram,
    pub result: Diagram,
    pub trace: Trace,
    /// The stated result as a matrix, written out by hand.
    pub expected: Matrix,
    /// Comparison of the final diagram against `expected`.
    pub verdict: EqualityVerdict,
}

impl Derivation {
    pub fn passed(&self) -> bool {
        self.verdict.equal
    }
}

type ScriptFn = fn(&mut Script) -> Result<()>;

pub fn replay_derivation(name: &str) -> Result<Derivation> {
    let (name, start, expected, script): (&'static str, Diagram, Matrix, ScriptFn) = match name {
        "hopf" => (
            "hopf",
            hopf_start(),
            ket_bra(&[1.0, 0.0], &[1.0, 1.0]),
            hopf,
        ),
        "rule_a" => ("rule_a", rule_a_start(), rule_a_expected(), rule_a),
        "ghz_plug0" => (
            "ghz_plug0",
            ghz_plugged(Point::ZPlus)?,
            basis(2, 0b00),
            ghz_plug0,
        ),
        "ghz_plug1" => (
            "ghz_plug1",
            ghz_plugged(Point::ZMinus)?,
            basis(2, 0b11),
            ghz_plug1,
        ),
        "w_plug0" => (
            "w_plug0",
            w_state().plug(Side::Output, 0, Point::ZPlus)?,
            w_plug0_expected(),
            w_plug0,
        ),
        "w_plug1" => (
            "w_plug1",
            w_state().plug(Side::Output, 0, Point::ZMinus)?,
            basis(2, 0b00),
            w_plug1,
        ),
        "qkd_core" => ("qkd_core", qkd_start()?, column(&[1.0, -1.0]), qkd_core),
        _ => {
            return Err(ZxError::Argument(format!(
                "unknown derivation `{name}` (expected one of {})",
                DERIVATIONS.join(", ")
            )))
        }
    };
    let mut s = Script::new(name, start.clone());
    script(&mut s)?;
    let value = evaluate(&s.d)?;
    let verdict = equal_up_to_scalar(&value, &expected, DEFAULT_TOL)?;
    Ok(Derivation {
        name,
        start,
        result: s.d,
        trace: s.trace,
        expected,
        verdict,
    })
}

struct Script {
    name: &'static str,
    d: Diagram,
    trace: Trace,
}

impl Script {
    fn new(name: &'static str, d: Diagram) -> Script {
        let trace = Trace::new(&d);
        Script { name, d, trace }
    }

    fn fail(&self, reason: impl Into<String>) -> ZxError {
        ZxError::Replay {
            derivation: self.name.to_string(),
            step: self.trace.len() + 1,
            reason: reason.into(),
        }
    }

    fn run(&mut self, m: Match) -> Result<()> {
        let next = apply(&self.d, &m).map_err(|e| self.fail(e.to_string()))?;
        self.trace.push(&m, &next);
        self.d = next;
        Ok(())
    }

    /// Applies the first match of `rule` binding all of `at`.
    fn rule(&mut self, rule: RuleName, at: &[VertexId]) -> Result<()> {
        let m = find_matches(Rule::forward(rule), &self.d)
            .into_iter()
            .find(|m| at.iter().all(|v| m.vertices().contains(v)))
            .ok_or_else(|| {
                let ids: Vec<String> = at.iter().map(|v| v.to_string()).collect();
                self.fail(format!("{rule} does not match at [{}]", ids.join(", ")))
            })?;
        self.run(m)
    }

    /// Fuses two adjacent spiders, returning the survivor (the lower id).
    fn fuse(&mut self, a: VertexId, b: VertexId) -> Result<VertexId> {
        self.rule(RuleName::S1, &[a, b])?;
        Ok(a.min(b))
    }

    /// Moves the legs of `v` towards `toward` and `phase` onto a new spider,
    /// returning it.
    fn unfuse(&mut self, v: VertexId, toward: &[VertexId], phase: Phase) -> Result<VertexId> {
        let legs = toward
            .iter()
            .map(|&w| {
                self.d
                    .edges_between(v, w)
                    .first()
                    .copied()
                    .ok_or_else(|| self.fail(format!("{v} and {w} are not adjacent")))
            })
            .collect::<Result<Vec<_>>>()?;
        let fresh = self.d.peek_next_vertex();
        self.run(unfuse(v, legs, phase))?;
        Ok(fresh)
    }

    /// Puts an identity spider on a wire between `a` and `b`, returning it.
    fn insert(&mut self, a: VertexId, b: VertexId, color: Color) -> Result<VertexId> {
        let e = *self
            .d
            .edges_between(a, b)
            .first()
            .ok_or_else(|| self.fail(format!("{a} and {b} are not adjacent")))?;
        let m = insert_identity(&self.d, e, color).expect("edge exists");
        let fresh = self.d.peek_next_vertex();
        self.run(m)?;
        Ok(fresh)
    }

    /// Applies B1 to `point` and returns the copies in leg order of the target.
    fn copy(&mut self, point: VertexId) -> Result<Vec<VertexId>> {
        let target = self.sole_neighbor(point)?;
        let n = self.d.degree(target) - 1;
        let first = self.d.peek_next_vertex().0;
        self.rule(RuleName::B1, &[point, target])?;
        Ok((0..n as u32).map(|i| VertexId(first + i)).collect())
    }

    /// Applies B2 and returns the new X and Z spiders.
    fn bialgebra(
        &mut self,
        z1: VertexId,
        z2: VertexId,
        x1: VertexId,
        x2: VertexId,
    ) -> Result<(VertexId, VertexId)> {
        let nx = self.d.peek_next_vertex();
        self.rule(RuleName::B2, &[z1, z2, x1, x2])?;
        Ok((nx, VertexId(nx.0 + 1)))
    }

    /// Deletes the closed component containing `v` as a scalar.
    fn drop_scalar(&mut self, v: VertexId) -> Result<()> {
        let m = find_matches(Rule::forward(RuleName::D1), &self.d)
            .into_iter()
            .find(|m| m.role("member").is_some() && m.vertices().contains(&v))
            .ok_or_else(|| self.fail(format!("component of {v} is not a deletable scalar")))?;
        self.run(m)
    }

    fn sole_neighbor(&self, v: VertexId) -> Result<VertexId> {
        match self.d.neighbors(v).as_slice() {
            [w] => Ok(*w),
            _ => Err(self.fail(format!("{v} is not a point"))),
        }
    }

    /// The vertex attached to output `k`.
    fn at_output(&self, k: usize) -> Result<VertexId> {
        let b = *self
            .d
            .outputs()
            .get(k)
            .ok_or_else(|| self.fail(format!("no output {k}")))?;
        self.sole_neighbor(b)
    }

    /// The unique neighbor of `v` with the given kind.
    fn neighbor(&self, v: VertexId, kind: VertexKind) -> Result<VertexId> {
        let found: Vec<VertexId> = self
            .d
            .neighbors(v)
            .into_iter()
            .filter(|&w| self.d.kind(w) == Some(kind))
            .collect();
        match found.as_slice() {
            [w] => Ok(*w),
            _ => Err(self.fail(format!(
                "{v} has {} neighbors of kind {kind:?}",
                found.len()
            ))),
        }
    }

    /// The first neighbor of `v` with the given kind and degree 3.
    fn wide_neighbor(&self, v: VertexId, kind: VertexKind) -> Result<VertexId> {
        self.d
            .neighbors(v)
            .into_iter()
            .find(|&w| self.d.kind(w) == Some(kind) && self.d.degree(w) == 3)
            .ok_or_else(|| self.fail(format!("{v} has no degree-3 neighbor of kind {kind:?}")))
    }

    /// The neighbors of `v` other than `except`, in id order.
    fn others(&self, v: VertexId, except: &[VertexId]) -> Vec<VertexId> {
        self.d
            .neighbors(v)
            .into_iter()
            .filter(|w| !except.contains(w))
            .collect()
    }

    /// The degree-1 neighbor of `v` with the given kind.
    fn point_on(&self, v: VertexId, kind: VertexKind) -> Result<VertexId> {
        self.d
            .neighbors(v)
            .into_iter()
            .find(|&w| self.d.kind(w) == Some(kind) && self.d.degree(w) == 1)
            .ok_or_else(|| self.fail(format!("{v} carries no {kind:?} point")))
    }
}

fn z(p: Phase) -> VertexKind {
    VertexKind::Z(p)
}

fn x(p: Phase) -> VertexKind {
    VertexKind::X(p)
}

fn column(entries: &[f64]) -> Matrix {
    Matrix::column(entries.iter().map(|&r| C::new(r, 0.0)).collect())
}

fn basis(qubits: usize, index: usize) -> Matrix {
    let mut v = vec![0.0; 1 << qubits];
    v[index] = 1.0;
    column(&v)
}

/// `|ket⟩⟨bra|` for real single-qubit vectors.
fn ket_bra(ket: &[f64; 2], bra: &[f64; 2]) -> Matrix {
    let mut m = Matrix::zeros(2, 2);
    for (r, &k) in ket.iter().enumerate() {
        for (c, &b) in bra.iter().enumerate() {
            m.set(r, c, C::new(k * b, 0.0));
        }
    }
    m
}

// ---------------------------------------------------------------- Hopf law

fn hopf_start() -> Diagram {
    let mut d = Diagram::new();
    let i = d.add_input();
    let a = d.add_vertex(z(Phase::ZERO));
    let b = d.add_vertex(x(Phase::ZERO));
    let o = d.add_output();
    d.add_edge(i, a).unwrap();
    d.add_edge(a, b).unwrap();
    d.add_edge(a, b).unwrap();
    d.add_edge(b, o).unwrap();
    d
}

/// Two identities turn the parallel pair into a bialgebra square.
fn hopf(s: &mut Script) -> Result<()> {
    let a = s.sole_neighbor(s.d.inputs()[0])?;
    let b = s.at_output(0)?;
    let xs = s.insert(a, b, Color::X)?;
    let zs = s.insert(xs, b, Color::Z)?;
    let (_, nz) = s.bialgebra(a, zs, b, xs)?;
    let copies = s.copy(zs)?;
    let on_nz = copy_on(s, &copies, nz)?;
    let nz = s.fuse(nz, on_nz)?;
    s.rule(RuleName::S2a, &[nz])
}

// ---------------------------------------------------------------- rule A

fn rule_a_start() -> Diagram {
    let mut d = Diagram::new();
    let i = d.add_input();
    let p = d.add_vertex(x(Phase::PI));
    let s = d.add_vertex(z(rule_a_phase()));
    d.add_edge(i, p).unwrap();
    d.add_edge(p, s).unwrap();
    for _ in 0..2 {
        let o = d.add_output();
        d.add_edge(s, o).unwrap();
    }
    d
}

/// `|0⟩ ↦ |11⟩`, `|1⟩ ↦ e^{-iα}|00⟩`.
fn rule_a_expected() -> Matrix {
    let mut m = Matrix::zeros(4, 2);
    m.set(0b11, 0, C::new(1.0, 0.0));
    m.set(0b00, 1, (-rule_a_phase()).unit());
    m
}

fn rule_a(s: &mut Script) -> Result<()> {
    let p = s.sole_neighbor(s.d.inputs()[0])?;
    let t = s.neighbor(p, z(rule_a_phase()))?;
    let w = s.unfuse(t, &[p], rule_a_phase())?;
    s.rule(RuleName::K2, &[p, w])?;
    s.rule(RuleName::K1, &[w, t])?;
    s.fuse(p, t)?;
    Ok(())
}

// ---------------------------------------------------------------- GHZ plugs

fn ghz_plugged(point: Point) -> Result<Diagram> {
    ghz_state().plug(Side::Output, 0, point)
}

fn plugged_point(s: &Script) -> Result<VertexId> {
    s.d.vertices()
        .filter(|&(v, k)| {
            k.is_spider() && s.d.degree(v) == 1 && k.as_spider().unwrap().0 == Color::X
        })
        .map(|(v, _)| v)
        .last()
        .ok_or_else(|| s.fail("no plugged point"))
}

fn ghz_plug0(s: &mut Script) -> Result<()> {
    let p = plugged_point(s)?;
    s.copy(p)?;
    Ok(())
}

/// Splits `X(π)` into `z+` behind a π wire, pushes the π through and copies.
fn ghz_plug1(s: &mut Script) -> Result<()> {
    let p = plugged_point(s)?;
    let hub = s.sole_neighbor(p)?;
    let w = s.unfuse(p, &[hub], Phase::PI)?;
    s.rule(RuleName::K1, &[w, hub])?;
    for c in s.copy(p)? {
        let pi = s.sole_neighbor(c)?;
        s.fuse(c, pi)?;
    }
    Ok(())
}

// ---------------------------------------------------------------- W plugs

/// Roles in the W diagram: the parity spider and hub, and per output the
/// output spider, its gate and the gate's point.
struct WRoles {
    parity: VertexId,
    hub: VertexId,
    outs: Vec<VertexId>,
    gates: Vec<VertexId>,
    points: Vec<VertexId>,
}

fn w_roles(s: &Script, plugged: VertexId) -> Result<WRoles> {
    let o1 = s.sole_neighbor(plugged)?;
    let parity = s.wide_neighbor(o1, x(Phase::PI))?;
    let g1 = s.wide_neighbor(o1, x(Phase::ZERO))?;
    let hub = s.neighbor(g1, z(Phase::ZERO))?;
    let mut outs = vec![o1];
    for v in s.others(parity, &[o1]) {
        outs.push(v);
    }
    let gates = outs
        .iter()
        .map(|&o| s.wide_neighbor(o, x(Phase::ZERO)))
        .collect::<Result<Vec<_>>>()?;
    let points = gates
        .iter()
        .map(|&g| s.point_on(g, z(Phase::new(5, 3))))
        .collect::<Result<Vec<_>>>()?;
    Ok(WRoles {
        parity,
        hub,
        outs,
        gates,
        points,
    })
}

/// Last-created X point, which is the plugged one.
fn w_plugged(s: &Script) -> Result<VertexId> {
    s.d.vertices()
        .filter(|&(v, k)| matches!(k, VertexKind::X(_)) && s.d.degree(v) == 1)
        .map(|(v, _)| v)
        .last()
        .ok_or_else(|| s.fail("no plugged point"))
}

fn w_plug0_expected() -> Matrix {
    column(&[0.0, 1.0, 1.0, 0.0])
}

fn w_plug0(s: &mut Script) -> Result<()> {
    let p = w_plugged(s)?;
    let r = w_roles(s, p)?;
    w_plug0_core(s, p, &r)?;
    Ok(())
}

/// The copy that `B1` left on `target`.
fn copy_on(s: &Script, copies: &[VertexId], target: VertexId) -> Result<VertexId> {
    copies
        .iter()
        .copied()
        .find(|&c| s.d.neighbors(c) == [target])
        .ok_or_else(|| s.fail(format!("no copy landed on {target}")))
}

/// Reduces W with `z+` plugged on its first output to a phase-0 Z spider
/// holding the third output and an `X(π)` wire towards the second. Returns
/// that spider and the `X(π)` wire.
fn w_plug0_core(s: &mut Script, p: VertexId, r: &WRoles) -> Result<(VertexId, VertexId)> {
    let (o1, o2, o3) = (r.outs[0], r.outs[1], r.outs[2]);
    let (g1, g2, g3) = (r.gates[0], r.gates[1], r.gates[2]);
    let (p1, p2, p3) = (r.points[0], r.points[1], r.points[2]);

    // z+ copies through the first output spider
    let phi = s.unfuse(o1, &[], Phase::new(1, 3))?;
    let copies = s.copy(p)?;
    let (c_par, c_gate) = (copy_on(s, &copies, r.parity)?, copy_on(s, &copies, g1)?);
    let parity = s.fuse(r.parity, c_par)?;
    let g1 = s.fuse(g1, c_gate)?;
    s.rule(RuleName::S2a, &[g1])?;
    let k = s.fuse(r.hub, p1)?;
    s.drop_scalar(phi)?;

    // the X(π) left between the other two outputs is pushed through
    let fresh = s.d.peek_next_vertex().0;
    s.rule(RuleName::A, &[parity, o2])?;
    let pis: Vec<VertexId> = (fresh..s.d.peek_next_vertex().0).map(VertexId).collect();
    let pi_gate = *pis
        .iter()
        .find(|&&v| s.d.neighbors(v).contains(&g2))
        .ok_or_else(|| s.fail("no π wire on the gate"))?;
    let pi_out = *pis
        .iter()
        .find(|&&v| v != pi_gate)
        .ok_or_else(|| s.fail("no π wire on the output"))?;
    let g2 = s.fuse(g2, pi_gate)?;
    let o = s.fuse(o2, o3)?;

    // O, K, G2 and G3 form a bialgebra square
    let kp = s.unfuse(k, &[], Phase::new(5, 3))?;
    let xpi = s.unfuse(g2, &[], Phase::PI)?;
    let (_, nz) = s.bialgebra(o, k, g2, g3)?;
    let g2 = s.fuse(g2, xpi)?;
    s.rule(RuleName::A, &[g2, p2])?;
    let nz = s.fuse(nz, p2)?;
    let nz = s.fuse(nz, p3)?;
    let copies = s.copy(nz)?;
    let c_o = copy_on(s, &copies, o)?;
    let o = s.fuse(o, c_o)?;
    s.drop_scalar(kp)?;
    Ok((o, pi_out))
}

fn w_plug1(s: &mut Script) -> Result<()> {
    let p = w_plugged(s)?;
    let r = w_roles(s, p)?;
    let (o1, o2, o3) = (r.outs[0], r.outs[1], r.outs[2]);
    let (g1, g2, g3) = (r.gates[0], r.gates[1], r.gates[2]);
    let (p1, p2, p3) = (r.points[0], r.points[1], r.points[2]);

    // z- becomes z+ behind a π wire, which K1 pushes through
    let w = s.unfuse(p, &[o1], Phase::PI)?;
    let phi = s.unfuse(o1, &[], Phase::new(1, 3))?;
    s.rule(RuleName::K1, &[w, o1])?;
    for c in s.copy(p)? {
        let pi = s.sole_neighbor(c)?;
        s.fuse(c, pi)?;
    }
    let on_par = s.point_on(r.parity, x(Phase::PI))?;
    let parity = s.fuse(r.parity, on_par)?;
    let on_gate = s.point_on(g1, x(Phase::PI))?;
    let g1 = s.fuse(g1, on_gate)?;
    s.drop_scalar(phi)?;
    s.rule(RuleName::S2a, &[parity])?;
    let o = s.fuse(o2, o3)?;
    s.rule(RuleName::A, &[g1, p1])?;
    let k = s.fuse(r.hub, p1)?;

    // a bialgebra square leaves two supplementary points
    let outs: Vec<VertexId> = s.d.outputs().to_vec();
    let rest = s.unfuse(o, &outs, Phase::new(2, 3))?;
    let kp = s.unfuse(k, &[], Phase::new(1, 3))?;
    let (nx, nz) = s.bialgebra(o, k, g2, g3)?;
    let nz = s.fuse(nz, p2)?;
    let nz = s.fuse(nz, p3)?;
    s.rule(RuleName::E, &[nx, kp, nz])?;

    // the remaining z+ copies onto both outputs
    let rp = s.unfuse(rest, &[], Phase::new(2, 3))?;
    let copies = s.copy(nx)?;
    let on_rp = copy_on(s, &copies, rp)?;
    s.drop_scalar(on_rp)
}

// ---------------------------------------------------------------- QKD

/// W with the decider's `z+` on the first wire and an `x` effect of phase π
/// on the second.
fn qkd_start() -> Result<Diagram> {
    w_state()
        .plug(Side::Output, 0, Point::ZPlus)?
        .plug(Side::Output, 0, Point::XMinus)
}

fn qkd_core(s: &mut Script) -> Result<()> {
    let p =
        s.d.vertices()
            .filter(|&(v, k)| k == x(Phase::ZERO) && s.d.degree(v) == 1)
            .map(|(v, _)| v)
            .next()
            .ok_or_else(|| s.fail("no decider point"))?;
    let r = w_roles(s, p)?;
    let (o, pi) = w_plug0_core(s, p, &r)?;
    let effect = s.neighbor(pi, z(Phase::PI))?;
    s.rule(RuleName::A, &[pi, effect])?;
    s.fuse(o, effect)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_derivation_replays() {
        for name in DERIVATIONS {
            let d = replay_derivation(name).unwrap_or_else(|e| panic!("{e}"));
            assert!(d.passed(), "{name}: residual {}", d.verdict.max_residual);
        }
    }

    #[test]
    fn unknown_name_is_an_argument_error() {
        assert!(matches!(
            replay_derivation("nope"),
            Err(ZxError::Argument(_))
        ));
    }
}
