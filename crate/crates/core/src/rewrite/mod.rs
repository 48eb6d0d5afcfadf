//! Local rewrite rules, matching, strategies, soundness sampling and replay
//! of scripted derivations.
//!
//! Every rule is a procedural matcher plus applier behind [`find_matches`] and
//! [`apply`]. Appliers re-check the rule's predicate and report a stale match
//! instead of rewriting a region that no longer fits. Each application also
//! reports how the two sides differ by a power of √2, which strict scalar
//! mode uses to keep the diagram exactly equal.

mod derivations;
mod rules;
pub use rules::{insert_identity, unfuse};
mod soundness;
mod strategy;

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, ZxError};
use crate::graph::{Color, Diagram, EdgeId, VertexId, VertexKind};
use crate::phase::Phase;
use crate::zxg;

pub use derivations::{replay_derivation, Derivation, DERIVATIONS};
pub use soundness::{check_soundness, sample_pattern, SoundnessFailure, SoundnessReport};
pub use strategy::{simplify, Simplified, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleName {
    S1,
    S2a,
    S2b,
    B1,
    B2,
    K1,
    K2,
    C,
    D1,
    D2,
    E,
    Hopf,
    A,
}

impl RuleName {
    pub const ALL: [RuleName; 13] = [
        RuleName::S1,
        RuleName::S2a,
        RuleName::S2b,
        RuleName::B1,
        RuleName::B2,
        RuleName::K1,
        RuleName::K2,
        RuleName::C,
        RuleName::D1,
        RuleName::D2,
        RuleName::E,
        RuleName::Hopf,
        RuleName::A,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::S1 => "S1",
            RuleName::S2a => "S2a",
            RuleName::S2b => "S2b",
            RuleName::B1 => "B1",
            RuleName::B2 => "B2",
            RuleName::K1 => "K1",
            RuleName::K2 => "K2",
            RuleName::C => "C",
            RuleName::D1 => "D1",
            RuleName::D2 => "D2",
            RuleName::E => "E",
            RuleName::Hopf => "HOPF",
            RuleName::A => "A",
        }
    }

    /// Whether the rule has a backward form.
    pub fn reversible(self) -> bool {
        matches!(self, RuleName::S1 | RuleName::S2a | RuleName::C)
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleName {
    type Err = ZxError;
    fn from_str(s: &str) -> Result<RuleName> {
        RuleName::ALL
            .into_iter()
            .find(|r| r.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| ZxError::Argument(format!("unknown rule `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub name: RuleName,
    pub direction: Direction,
}

impl Rule {
    pub fn forward(name: RuleName) -> Rule {
        Rule {
            name,
            direction: Direction::Forward,
        }
    }

    pub fn backward(name: RuleName) -> Rule {
        Rule {
            name,
            direction: Direction::Backward,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.direction {
            Direction::Forward => write!(f, "{}", self.name),
            Direction::Backward => write!(f, "{}^-1", self.name),
        }
    }
}

impl FromStr for Rule {
    type Err = ZxError;
    /// `S1`, or `S1^-1` / `S1-` for the backward direction.
    fn from_str(s: &str) -> Result<Rule> {
        let (base, dir) = if let Some(b) = s.strip_suffix("^-1") {
            (b, Direction::Backward)
        } else if let Some(b) = s.strip_suffix('-') {
            (b, Direction::Backward)
        } else {
            (s, Direction::Forward)
        };
        let name: RuleName = base.parse()?;
        if dir == Direction::Backward && !name.reversible() {
            return Err(ZxError::Argument(format!(
                "rule {name} has no backward form"
            )));
        }
        Ok(Rule {
            name,
            direction: dir,
        })
    }
}

/// An occurrence of a rule's left-hand side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Match {
    pub rule: Rule,
    /// Pattern roles bound to vertices, e.g. `("a", v3)`.
    pub roles: Vec<(&'static str, VertexId)>,
    /// Legs selected by variadic rules (unfusion, wire insertion).
    pub legs: Vec<EdgeId>,
    /// Color of an inserted spider, for `S2a^-1`.
    pub color: Option<Color>,
    /// Phase moved onto the new spider, for `S1^-1`.
    pub phase: Option<Phase>,
}

impl Match {
    fn new(rule: Rule, roles: Vec<(&'static str, VertexId)>) -> Match {
        Match {
            rule,
            roles,
            legs: Vec::new(),
            color: None,
            phase: None,
        }
    }

    pub fn role(&self, name: &str) -> Option<VertexId> {
        self.roles.iter().find(|(r, _)| *r == name).map(|&(_, v)| v)
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.roles.iter().map(|&(_, v)| v).collect()
    }

    /// `[v1, v2]`, plus selected legs and parameters when present.
    pub fn summary(&self) -> String {
        let ids: Vec<String> = self.roles.iter().map(|(_, v)| v.to_string()).collect();
        let mut s = format!("[{}]", ids.join(", "));
        if !self.legs.is_empty() {
            let legs: Vec<String> = self.legs.iter().map(|e| format!("e{}", e.0)).collect();
            s.push_str(&format!(" legs [{}]", legs.join(", ")));
        }
        if let Some(c) = self.color {
            s.push_str(&format!(" color {c}"));
        }
        if let Some(p) = self.phase {
            if !p.is_zero() {
                s.push_str(&format!(" phase {p}"));
            }
        }
        s
    }
}

impl fmt::Display for Match {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.rule, self.summary())
    }
}

/// Whether rewrites must preserve the exact scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ScalarMode {
    #[default]
    UpToScalar,
    Strict,
}

/// Result of one application: `lhs = (√2)^k · rhs` when `sqrt2_power` is `Some(k)`.
#[derive(Clone, Debug)]
pub struct Applied {
    pub diagram: Diagram,
    pub sqrt2_power: Option<i32>,
}

pub fn find_matches(rule: Rule, d: &Diagram) -> Vec<Match> {
    find_matches_in(rule, d, ScalarMode::UpToScalar)
}

/// Matches in ascending vertex order. Strict mode drops matches whose scalar
/// cannot be restored with diamonds.
pub fn find_matches_in(rule: Rule, d: &Diagram, mode: ScalarMode) -> Vec<Match> {
    let mut ms = rules::matches(rule, d, mode);
    ms.sort_by(|a, b| {
        (a.vertices(), &a.legs, a.color, a.phase).cmp(&(b.vertices(), &b.legs, b.color, b.phase))
    });
    ms.dedup();
    if mode == ScalarMode::Strict {
        ms.retain(|m| apply_in(d, m, mode).is_ok());
    }
    ms
}

/// Applies in up-to-scalar mode.
pub fn apply(d: &Diagram, m: &Match) -> Result<Diagram> {
    apply_in(d, m, ScalarMode::UpToScalar)
}

pub fn apply_in(d: &Diagram, m: &Match, mode: ScalarMode) -> Result<Diagram> {
    let applied = apply_raw(d, m)?;
    match mode {
        ScalarMode::UpToScalar => Ok(applied.diagram),
        ScalarMode::Strict => restore_scalar(applied, m),
    }
}

/// Applies a match and reports the √2 power relating the two sides.
pub fn apply_raw(d: &Diagram, m: &Match) -> Result<Applied> {
    rules::apply(d, m)
}

fn restore_scalar(applied: Applied, m: &Match) -> Result<Diagram> {
    let stale = |reason: &str| ZxError::StaleMatch {
        rule: m.rule.to_string(),
        reason: reason.to_string(),
    };
    let k = applied
        .sqrt2_power
        .ok_or_else(|| stale("scalar is not a power of √2"))?;
    let mut out = applied.diagram;
    if k >= 0 {
        for _ in 0..k {
            out.add_vertex(VertexKind::Diamond);
        }
    } else {
        let diamonds: Vec<VertexId> = out
            .vertices()
            .filter(|&(_, kind)| kind == VertexKind::Diamond)
            .map(|(v, _)| v)
            .take((-k) as usize)
            .collect();
        if diamonds.len() < (-k) as usize {
            return Err(stale("not enough diamonds to absorb the scalar"));
        }
        for v in diamonds {
            out.remove_vertex(v);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub rule: Rule,
    pub summary: String,
    pub snapshot: String,
}

/// Replayable step log; the first snapshot is the starting diagram.
#[derive(Clone, Debug)]
pub struct Trace {
    pub start: String,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn new(start: &Diagram) -> Trace {
        Trace {
            start: zxg::serialize(start),
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, m: &Match, after: &Diagram) {
        self.steps.push(TraceStep {
            rule: m.rule,
            summary: m.summary(),
            snapshot: zxg::serialize(after),
        });
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn rules(&self) -> Vec<Rule> {
        self.steps.iter().map(|s| s.rule).collect()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "step 0: start")?;
        f.write_str(&self.start)?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "step {}: {} at {}", i + 1, s.rule, s.summary)?;
            f.write_str(&s.snapshot)?;
        }
        Ok(())
    }
}
