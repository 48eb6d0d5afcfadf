//! Randomized soundness checking against the tensor semantics.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Color, Diagram, VertexId, VertexKind};
use crate::phase::Phase;
use crate::random::{embed, pick_phase, random_diagram, random_rational, RandomParams};
use crate::semantics::{equal_up_to_scalar, EvalOptions};
use crate::zxg;

use super::{apply_in, find_matches, Direction, Rule, RuleName, ScalarMode};

const TOL: f64 = 1e-9;
const MAX_BOUNDARIES: usize = 4;

#[derive(Clone, Debug)]
pub struct SoundnessFailure {
    pub sample: usize,
    pub rule: Rule,
    pub summary: String,
    pub reason: String,
    /// The diagram the rule was applied to, in `.zxg` form.
    pub repro: String,
}

#[derive(Clone, Debug)]
pub struct SoundnessReport {
    pub rule: RuleName,
    pub samples: usize,
    pub seed: u64,
    /// Number of rule applications compared against the oracle.
    pub checks: usize,
    /// Applications also compared exactly in strict scalar mode.
    pub strict_checks: usize,
    pub failures: Vec<SoundnessFailure>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn color<R: Rng>(rng: &mut R) -> Color {
    if rng.gen_bool(0.5) {
        Color::Z
    } else {
        Color::X
    }
}

/// Adds `n` open legs on `v`, each a new boundary.
fn open_legs<R: Rng>(rng: &mut R, d: &mut Diagram, v: VertexId, n: usize) {
    for _ in 0..n {
        let b = if rng.gen_bool(0.5) {
            d.add_input()
        } else {
            d.add_output()
        };
        d.add_edge(v, b).unwrap();
    }
}

/// A random instance of the rule's left-hand side with dangling boundaries.
fn pattern<R: Rng>(rng: &mut R, rule: RuleName, extra: Phase) -> Diagram {
    let mut d = Diagram::new();
    let phase = |rng: &mut R| pick_phase(rng, extra);
    match rule {
        RuleName::S1 => {
            let c = color(rng);
            let a = d.add_vertex(VertexKind::spider(c, phase(rng)));
            let b = d.add_vertex(VertexKind::spider(c, phase(rng)));
            for _ in 0..rng.gen_range(1..=2) {
                d.add_edge(a, b).unwrap();
            }
            if rng.gen_bool(0.3) {
                d.add_edge(b, b).unwrap();
            }
            let (na, nb) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
            open_legs(rng, &mut d, a, na);
            open_legs(rng, &mut d, b, nb);
        }
        RuleName::S2a | RuleName::S2b => {
            let c = color(rng);
            let a = d.add_vertex(VertexKind::spider(c, Phase::ZERO));
            open_legs(rng, &mut d, a, 1);
            let last = if rule == RuleName::S2b {
                let c2 = color(rng);
                let b = d.add_vertex(VertexKind::spider(c2, Phase::ZERO));
                d.add_edge(a, b).unwrap();
                b
            } else {
                a
            };
            open_legs(rng, &mut d, last, 1);
        }
        RuleName::B1 => {
            let c = color(rng);
            let p = d.add_vertex(VertexKind::spider(c, Phase::ZERO));
            let s = d.add_vertex(VertexKind::spider(c.flip(), Phase::ZERO));
            d.add_edge(p, s).unwrap();
            let n = rng.gen_range(0..=3);
            open_legs(rng, &mut d, s, n);
        }
        RuleName::B2 => {
            let z: Vec<VertexId> = (0..2)
                .map(|_| d.add_vertex(VertexKind::Z(Phase::ZERO)))
                .collect();
            let x: Vec<VertexId> = (0..2)
                .map(|_| d.add_vertex(VertexKind::X(Phase::ZERO)))
                .collect();
            for &a in &z {
                for &b in &x {
                    d.add_edge(a, b).unwrap();
                }
            }
            for v in z.into_iter().chain(x) {
                let n = if rng.gen_bool(0.6) {
                    1
                } else {
                    rng.gen_range(0..=2)
                };
                open_legs(rng, &mut d, v, n);
            }
        }
        RuleName::K1 | RuleName::K2 | RuleName::A => {
            let c = color(rng);
            let p = d.add_vertex(VertexKind::spider(c, Phase::PI));
            let alpha = if rule == RuleName::K1 {
                Phase::ZERO
            } else {
                phase(rng)
            };
            let s = d.add_vertex(VertexKind::spider(c.flip(), alpha));
            d.add_edge(p, s).unwrap();
            open_legs(rng, &mut d, p, 1);
            let n = match rule {
                RuleName::K2 => 1,
                _ => rng.gen_range(0..=3),
            };
            open_legs(rng, &mut d, s, n);
        }
        RuleName::C => {
            let c = color(rng);
            let v = d.add_vertex(VertexKind::spider(c, phase(rng)));
            let n = rng.gen_range(0..=3);
            if rng.gen_bool(0.5) {
                for _ in 0..n {
                    let h = d.add_vertex(VertexKind::H);
                    d.add_edge(v, h).unwrap();
                    open_legs(rng, &mut d, h, 1);
                }
            } else {
                open_legs(rng, &mut d, v, n);
            }
        }
        RuleName::D1 => {
            let z = d.add_vertex(VertexKind::Z(Phase::ZERO));
            let x = d.add_vertex(VertexKind::X(Phase::ZERO));
            d.add_edge(z, x).unwrap();
            if rng.gen_bool(0.5) {
                let p = d.add_vertex(VertexKind::spider(color(rng), phase(rng)));
                let q = d.add_vertex(VertexKind::spider(color(rng), phase(rng)));
                d.add_edge(p, q).unwrap();
            }
        }
        RuleName::D2 => {
            let v = d.add_vertex(VertexKind::spider(color(rng), Phase::ZERO));
            d.add_edge(v, v).unwrap();
            if rng.gen_bool(0.5) {
                d.add_vertex(VertexKind::Diamond);
            }
        }
        RuleName::E => {
            let beta = if rng.gen_bool(0.5) {
                Phase::ZERO
            } else {
                Phase::PI
            };
            let x = d.add_vertex(VertexKind::X(beta));
            let mut alpha = phase(rng);
            while (alpha + alpha).is_zero() {
                alpha = random_rational(rng);
            }
            let a = d.add_vertex(VertexKind::Z(alpha));
            let b = d.add_vertex(VertexKind::Z(alpha + Phase::PI));
            d.add_edge(a, x).unwrap();
            d.add_edge(b, x).unwrap();
            let n = rng.gen_range(0..=2);
            open_legs(rng, &mut d, x, n);
        }
        RuleName::Hopf => {
            let a = d.add_vertex(VertexKind::Z(phase(rng)));
            let b = d.add_vertex(VertexKind::X(phase(rng)));
            d.add_edge(a, b).unwrap();
            d.add_edge(a, b).unwrap();
            let (na, nb) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
            open_legs(rng, &mut d, a, na);
            open_legs(rng, &mut d, b, nb);
        }
    }
    d
}

fn directions(rule: RuleName) -> Vec<Rule> {
    let mut out = vec![Rule::forward(rule)];
    if rule.reversible() {
        out.push(Rule::backward(rule));
    }
    out
}

/// Samples `samples` random diagrams containing the rule's left-hand side,
/// applies every match once and compares against the evaluator. Matches with
/// an exact √2 bookkeeping are also checked entrywise in strict mode.
pub fn check_soundness(rule: RuleName, samples: usize, seed: u64) -> SoundnessReport {
    let mut report = SoundnessReport {
        rule,
        samples,
        seed,
        checks: 0,
        strict_checks: 0,
        failures: Vec::new(),
    };
    let ctx_params = RandomParams {
        max_vertices: 4,
        max_boundaries: 2,
        max_extra_edges: 2,
    };
    let opts = EvalOptions {
        max_wires: 20,
        ..EvalOptions::default()
    };
    for sample in 0..samples {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ sample as u64);
        let extra = random_rational(&mut rng);
        let lhs = pattern(&mut rng, rule, extra);
        let ctx = random_diagram(&mut rng, &ctx_params);
        let d = embed(&mut rng, &lhs, &ctx, MAX_BOUNDARIES);
        let before = match crate::semantics::evaluate_with(&d, &opts) {
            Ok(m) => m,
            Err(e) => {
                report.failures.push(SoundnessFailure {
                    sample,
                    rule: Rule::forward(rule),
                    summary: String::new(),
                    reason: format!("could not evaluate sample: {e}"),
                    repro: zxg::serialize(&d),
                });
                continue;
            }
        };
        let mut fail = |r: Rule, summary: String, reason: String| {
            report.failures.push(SoundnessFailure {
                sample,
                rule: r,
                summary,
                reason,
                repro: zxg::serialize(&d),
            })
        };
        let mut found_any = false;
        for r in directions(rule) {
            let mut ms = find_matches(r, &d);
            if r.direction == Direction::Backward {
                // backward rules match almost anywhere; sample a few
                ms.shuffle(&mut rng);
                ms.truncate(6);
            }
            for m in ms {
                found_any |= r.direction == Direction::Forward;
                report.checks += 1;
                let after = match apply_in(&d, &m, ScalarMode::UpToScalar) {
                    Ok(a) => a,
                    Err(e) => {
                        fail(r, m.summary(), format!("apply failed: {e}"));
                        continue;
                    }
                };
                if let Err(e) = after.validate() {
                    fail(r, m.summary(), format!("invalid result: {e}"));
                    continue;
                }
                let value = match crate::semantics::evaluate_with(&after, &opts) {
                    Ok(v) => v,
                    Err(e) => {
                        fail(r, m.summary(), format!("could not evaluate result: {e}"));
                        continue;
                    }
                };
                match equal_up_to_scalar(&value, &before, TOL) {
                    Ok(v) if v.equal => {}
                    Ok(v) => fail(
                        r,
                        m.summary(),
                        format!("semantics changed, residual {:.3e}", v.max_residual),
                    ),
                    Err(e) => fail(r, m.summary(), e.to_string()),
                }
                if let Ok(strict) = apply_in(&d, &m, ScalarMode::Strict) {
                    report.strict_checks += 1;
                    let exact = crate::semantics::evaluate_with(&strict, &opts)
                        .ok()
                        .and_then(|v| v.max_diff(&before))
                        .is_some_and(|diff| diff <= TOL * before.max_abs().max(1.0));
                    if !exact {
                        fail(r, m.summary(), "strict mode changed the scalar".into());
                    }
                }
            }
        }
        if !found_any {
            fail(
                Rule::forward(rule),
                String::new(),
                "embedded pattern produced no match".into(),
            );
        }
    }
    report
}

/// A random left-hand-side instance of `rule`, with open boundaries.
pub fn sample_pattern(rule: RuleName, seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let extra = random_rational(&mut rng);
    pattern(&mut rng, rule, extra)
}
