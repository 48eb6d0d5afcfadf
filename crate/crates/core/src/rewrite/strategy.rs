//! Bounded simplification.

use std::str::FromStr;

use crate::error::ZxError;
use crate::graph::Diagram;

use super::{apply_in, find_matches_in, Match, Rule, RuleName, ScalarMode, Trace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Only size-decreasing steps of S2a, S2b, S1, HOPF, B1 and the D rules.
    Safe,
    /// Safe steps first, then any step of B2, E, K1, K2, A or C whose
    /// safe closure is smaller than the current diagram.
    Full,
}

impl FromStr for Strategy {
    type Err = ZxError;
    fn from_str(s: &str) -> Result<Strategy, ZxError> {
        match s {
            "safe" => Ok(Strategy::Safe),
            "full" => Ok(Strategy::Full),
            _ => Err(ZxError::Argument(format!("unknown strategy `{s}`"))),
        }
    }
}

const SAFE_RULES: [RuleName; 7] = [
    RuleName::S2a,
    RuleName::S2b,
    RuleName::S1,
    RuleName::Hopf,
    RuleName::B1,
    RuleName::D1,
    RuleName::D2,
];

const EXTRA_RULES: [RuleName; 6] = [
    RuleName::B2,
    RuleName::E,
    RuleName::K1,
    RuleName::K2,
    RuleName::A,
    RuleName::C,
];

#[derive(Clone, Debug)]
pub struct Simplified {
    pub diagram: Diagram,
    pub trace: Trace,
    /// True when the step limit stopped the run before a fixed point.
    pub hit_limit: bool,
}

/// First size-decreasing safe step, in rule priority then match order.
fn safe_step(d: &Diagram, mode: ScalarMode) -> Option<(Match, Diagram)> {
    for name in SAFE_RULES {
        for m in find_matches_in(Rule::forward(name), d, mode) {
            if let Ok(next) = apply_in(d, &m, mode) {
                if next.size() < d.size() {
                    return Some((m, next));
                }
            }
        }
    }
    None
}

fn safe_closure(mut d: Diagram, mode: ScalarMode) -> Diagram {
    while let Some((_, next)) = safe_step(&d, mode) {
        d = next;
    }
    d
}

fn extra_step(d: &Diagram, mode: ScalarMode) -> Option<(Match, Diagram)> {
    for name in EXTRA_RULES {
        for m in find_matches_in(Rule::forward(name), d, mode) {
            if let Ok(next) = apply_in(d, &m, mode) {
                if safe_closure(next.clone(), mode).size() < d.size() {
                    return Some((m, next));
                }
            }
        }
    }
    None
}

pub fn simplify(
    d: &Diagram,
    strategy: Strategy,
    step_limit: usize,
    mode: ScalarMode,
) -> Simplified {
    let mut cur = d.clone();
    let mut trace = Trace::new(d);
    loop {
        let step = safe_step(&cur, mode).or_else(|| match strategy {
            Strategy::Safe => None,
            Strategy::Full => extra_step(&cur, mode),
        });
        let Some((m, next)) = step else {
            return Simplified {
                diagram: cur,
                trace,
                hit_limit: false,
            };
        };
        if trace.len() >= step_limit {
            return Simplified {
                diagram: cur,
                trace,
                hit_limit: true,
            };
        }
        trace.push(&m, &next);
        cur = next;
    }
}
