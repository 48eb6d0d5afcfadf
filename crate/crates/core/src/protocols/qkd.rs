//! Pairwise key distribution over shared W states.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, ZxError};
use crate::graph::{Point, Side};
use crate::rewrite::replay_derivation;
use crate::semantics::{
    amplitude, born_probability_vector, equal_up_to_scalar, evaluate, Matrix, C, DEFAULT_TOL,
};

use super::report::{Estimate, ProtocolReport};
use super::sdc::decode_basis;
use super::states::w_state;

pub const PARTICIPANTS: [&str; 3] = ["Alice", "Bob", "Charlie"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Z,
    X,
}

impl Basis {
    fn effect(self, plus: bool) -> Point {
        match (self, plus) {
            (Basis::Z, true) => Point::ZPlus,
            (Basis::Z, false) => Point::ZMinus,
            (Basis::X, true) => Point::XPlus,
            (Basis::X, false) => Point::XMinus,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Z => "z",
            Basis::X => "x",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QkdRound {
    pub bases: [Basis; 3],
    /// `true` for `+`. Only sampled once the basis pattern is accepted.
    pub outcomes: Option<[bool; 3]>,
    pub accepted: bool,
    pub decider: Option<usize>,
    pub shared_bit: Option<u8>,
    /// Set when the eavesdropping hook sacrificed the round.
    pub announced: bool,
}

impl QkdRound {
    /// The participant who measured in z, if exactly one did.
    pub fn decider_of(bases: &[Basis; 3]) -> Option<usize> {
        let zs: Vec<usize> = (0..3).filter(|&i| bases[i] == Basis::Z).collect();
        match zs.as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }
}

/// Eavesdropping checks around the key exchange. The protocol leaves their
/// content open; the default implementation sacrifices no rounds and
/// detects nothing.
pub trait EavesdropHook {
    /// Whether a round's outcomes are announced for checking (and discarded).
    fn announce(&mut self, _round: usize) -> bool {
        false
    }

    /// Whether the announced rounds reveal an eavesdropper.
    fn detect(&mut self, _announced: &[QkdRound]) -> bool {
        false
    }
}

pub struct NoEavesdropCheck;

impl EavesdropHook for NoEavesdropCheck {}

/// The W state as a unit vector.
fn w_vector() -> Result<Matrix> {
    let v = evaluate(&w_state())?;
    let n = v.norm();
    if n <= f64::MIN_POSITIVE {
        return Err(ZxError::ZeroNorm);
    }
    Ok(v.scale(C::new(1.0 / n, 0.0)))
}

/// Numerical checks of the two correctness lemmas plus the diagrammatic
/// replay of the equal-outcome argument.
pub fn qkd_check_lemmas() -> Result<ProtocolReport> {
    let mut report = ProtocolReport::new("qkd-w3 lemmas");

    // a z- outcome anywhere leaves the other two in |00⟩
    for w in 0..3 {
        let id = format!("z-/wire{}", w + 1);
        let v = evaluate(&w_state().plug(Side::Output, w, Point::ZMinus)?)?;
        match decode_basis(&v, DEFAULT_TOL) {
            Ok(b) => report.case(id, "00", format!("{b:02b}"), b == 0),
            Err(e) => report.case(id, "00", e.to_string(), false),
        }
    }

    // with the decider at z+, x outcomes of the other two agree
    let psi = w_vector()?;
    for decider in 0..3 {
        for a in [true, false] {
            for b in [true, false] {
                let mut effects = [Point::ZPlus; 3];
                let others: Vec<usize> = (0..3).filter(|&i| i != decider).collect();
                effects[others[0]] = Basis::X.effect(a);
                effects[others[1]] = Basis::X.effect(b);
                let amp = amplitude(&psi, &effects)?.norm();
                let names: Vec<&str> = effects.iter().map(|&p| p.name()).collect();
                let id = format!("decider{}/{}", decider + 1, names.join(","));
                let (expected, pass) = if a == b {
                    ("nonzero", amp > DEFAULT_TOL)
                } else {
                    ("zero", amp <= DEFAULT_TOL)
                };
                report.case(id, expected, format!("{amp:.6}"), pass);
            }
        }
    }

    let d = replay_derivation("qkd_core")?;
    let state = evaluate(&d.result)?;
    let actual = if d.passed() { "x- on wire 3" } else { "other" };
    report.case("replay/qkd_core", "x- on wire 3", actual, d.passed());
    if let Some(l) = equal_up_to_scalar(&state, &d.expected, DEFAULT_TOL)?.scalar {
        report.scalars.push(("replay/qkd_core".into(), l));
    }
    report.traces.push(("qkd_core".into(), d.trace));
    Ok(report)
}

/// Runs `rounds` protocol rounds with no eavesdropping checks.
pub fn qkd_simulate(rounds: usize, seed: u64) -> Result<(ProtocolReport, Vec<QkdRound>)> {
    qkd_simulate_with(rounds, seed, &mut NoEavesdropCheck)
}

/// Each round draws from its own ChaCha stream keyed by `(seed, round)`, so
/// rounds are independent of evaluation order.
pub fn qkd_simulate_with(
    rounds: usize,
    seed: u64,
    hook: &mut dyn EavesdropHook,
) -> Result<(ProtocolReport, Vec<QkdRound>)> {
    if rounds < 1 {
        return Err(ZxError::Argument("at least one round is needed".into()));
    }
    let psi = w_vector()?;
    let mut log = Vec::with_capacity(rounds);
    for r in 0..rounds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let bases: [Basis; 3] = std::array::from_fn(|_| {
            if rng.gen_bool(0.5) {
                Basis::Z
            } else {
                Basis::X
            }
        });
        let mut round = QkdRound {
            bases,
            outcomes: None,
            accepted: false,
            decider: None,
            shared_bit: None,
            announced: false,
        };
        if hook.announce(r) {
            round.announced = true;
            log.push(round);
            continue;
        }
        let Some(decider) = QkdRound::decider_of(&bases) else {
            log.push(round);
            continue;
        };
        round.decider = Some(decider);
        let outcomes = sample_outcomes(&mut rng, &psi, &bases)?;
        round.outcomes = Some(outcomes);
        if outcomes[decider] {
            round.accepted = true;
            let others: Vec<usize> = (0..3).filter(|&i| i != decider).collect();
            if outcomes[others[0]] == outcomes[others[1]] {
                round.shared_bit = Some(u8::from(!outcomes[others[0]]));
            }
        }
        log.push(round);
    }
    let announced: Vec<QkdRound> = log.iter().filter(|r| r.announced).cloned().collect();
    let eavesdropper = hook.detect(&announced);
    Ok((summarize(&log, seed, eavesdropper), log))
}

/// Draws a joint outcome from the Born distribution over the product basis.
fn sample_outcomes(rng: &mut ChaCha8Rng, psi: &Matrix, bases: &[Basis; 3]) -> Result<[bool; 3]> {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut last = [false; 3];
    for idx in 0..8 {
        let outcome = [idx >> 2 & 1 == 0, idx >> 1 & 1 == 0, idx & 1 == 0];
        let effects: Vec<Point> = (0..3).map(|q| bases[q].effect(outcome[q])).collect();
        let p = born_probability_vector(psi, &effects)?;
        if p > 0.0 {
            last = outcome;
        }
        acc += p;
        if u < acc {
            return Ok(outcome);
        }
    }
    Ok(last)
}

fn summarize(log: &[QkdRound], seed: u64, eavesdropper: bool) -> ProtocolReport {
    let mut report = ProtocolReport::new("qkd-w3");
    report.seed = Some(seed);
    let fresh: Vec<&QkdRound> = log.iter().filter(|r| !r.announced).collect();
    let pattern_ok = fresh.iter().filter(|r| r.decider.is_some()).count();
    let accepted = fresh.iter().filter(|r| r.accepted).count();
    let mismatches = fresh
        .iter()
        .filter(|r| r.accepted && r.shared_bit.is_none())
        .count();

    let acceptance = Estimate {
        name: "basis acceptance rate".into(),
        successes: pattern_ok,
        trials: fresh.len(),
    };
    let decider_plus = Estimate {
        name: "P(decider z+ | accepted bases)".into(),
        successes: accepted,
        trials: pattern_ok,
    };
    report.case(
        "basis-acceptance",
        "0.375 within 3σ",
        format!("{:.4}", acceptance.value()),
        acceptance.within(0.375, 3.0),
    );
    report.case(
        "decider-z+",
        "0.6667 within 3σ",
        format!("{:.4}", decider_plus.value()),
        decider_plus.within(2.0 / 3.0, 3.0),
    );
    report.case("x-mismatch", "0", mismatches.to_string(), mismatches == 0);
    report.case(
        "eavesdropping",
        "not detected",
        if eavesdropper {
            "detected"
        } else {
            "not detected"
        },
        !eavesdropper,
    );
    report.counts.push(("rounds".into(), log.len()));
    report
        .counts
        .push(("announced".into(), log.len() - fresh.len()));
    report.counts.push(("accepted bases".into(), pattern_ok));
    report
        .counts
        .push(("key bits".into(), accepted - mismatches));
    report.counts.push(("mismatches".into(), mismatches));
    for (a, first) in PARTICIPANTS.iter().enumerate() {
        for (b, second) in PARTICIPANTS.iter().enumerate().skip(a + 1) {
            let key: String = fresh
                .iter()
                .filter(|r| r.decider.is_some_and(|d| d != a && d != b))
                .filter_map(|r| r.shared_bit)
                .map(|bit| char::from(b'0' + bit))
                .collect();
            report
                .counts
                .push((format!("key {first}-{second}"), key.len()));
            report.keys.push((format!("{first}-{second}"), key));
        }
    }
    report.estimates.push(acceptance);
    report.estimates.push(decider_plus);
    report
}
