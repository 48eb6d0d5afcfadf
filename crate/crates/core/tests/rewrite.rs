mod common;

use std::collections::BTreeSet;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zx_core::protocols::ghz_state;
use zx_core::random::{embed, random_diagram, RandomParams};
use zx_core::rewrite::{
    apply, apply_in, check_soundness, find_matches, find_matches_in, replay_derivation,
    sample_pattern, simplify, Rule, RuleName, ScalarMode, Strategy,
};
use zx_core::semantics::equal_up_to_scalar;
use zx_core::{evaluate, Diagram, Phase, Point, Side, VertexKind};

fn fwd(name: RuleName) -> Rule {
    Rule::forward(name)
}

fn joined(a: VertexKind, b: VertexKind) -> (Diagram, zx_core::VertexId, zx_core::VertexId) {
    let mut d = Diagram::new();
    let (i, o) = (d.add_input(), d.add_output());
    let x = d.add_vertex(a);
    let y = d.add_vertex(b);
    d.add_edge(i, x).unwrap();
    d.add_edge(x, y).unwrap();
    d.add_edge(y, o).unwrap();
    (d, x, y)
}

fn same_up_to_scalar(a: &Diagram, b: &Diagram) -> bool {
    equal_up_to_scalar(&evaluate(a).unwrap(), &evaluate(b).unwrap(), 1e-9)
        .unwrap()
        .equal
}

#[test]
fn match_counts() {
    let (d, _, _) = joined(VertexKind::Z(Phase::ZERO), VertexKind::Z(Phase::ZERO));
    assert_eq!(find_matches(fwd(RuleName::S1), &d).len(), 1);
    assert!(find_matches(fwd(RuleName::B1), &d).is_empty());

    let hopf = replay_derivation("hopf").unwrap().start;
    assert_eq!(find_matches(fwd(RuleName::Hopf), &hopf).len(), 1);
}

#[test]
fn fusion_adds_phases() {
    let half = Phase::new(1, 2);
    let (d, _, _) = joined(VertexKind::Z(half), VertexKind::Z(half));
    let m = &find_matches(fwd(RuleName::S1), &d)[0];
    let out = apply(&d, m).unwrap();
    let spiders: Vec<VertexKind> = out
        .vertices()
        .map(|(_, k)| k)
        .filter(VertexKind::is_spider)
        .collect();
    assert_eq!(spiders, vec![VertexKind::Z(Phase::PI)]);
}

#[test]
fn pi_commutation_negates_the_phase() {
    let alpha = Phase::new(1, 3);
    let (d, pi, _) = joined(VertexKind::X(Phase::PI), VertexKind::Z(alpha));
    let ms = find_matches(fwd(RuleName::K2), &d);
    let m = ms
        .iter()
        .find(|m| m.role("pi") == Some(pi))
        .expect("K2 match");
    let out = apply(&d, m).unwrap();
    let mut kinds: Vec<VertexKind> = out
        .vertices()
        .map(|(_, k)| k)
        .filter(VertexKind::is_spider)
        .collect();
    kinds.sort_by_key(|k| format!("{k:?}"));
    assert!(kinds.contains(&VertexKind::Z(-alpha)), "{kinds:?}");
    assert!(kinds.contains(&VertexKind::X(Phase::PI)), "{kinds:?}");
    assert!(same_up_to_scalar(&d, &out));

    // order along the wire: Z(−α) on the input side, X(π) on the output side
    let (_, first) = out.boundary_neighbor(out.inputs()[0]).unwrap();
    assert_eq!(out.kind(first), Some(VertexKind::Z(-alpha)));
}

#[test]
fn color_change_adds_hadamards() {
    let d = spider(VertexKind::X(Phase::ZERO), 1, 2);
    let ms = find_matches(fwd(RuleName::C), &d);
    assert_eq!(ms.len(), 1);
    let out = apply(&d, &ms[0]).unwrap();
    let hs = out.vertices().filter(|&(_, k)| k == VertexKind::H).count();
    assert_eq!(hs, 3);
    assert!(out.vertices().any(|(_, k)| k == VertexKind::Z(Phase::ZERO)));
    let v = equal_up_to_scalar(&evaluate(&out).unwrap(), &evaluate(&d).unwrap(), 1e-12).unwrap();
    assert!(v.equal && (v.scalar.unwrap() - c(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn pi_rules_reject_other_phases() {
    let (d, _, _) = joined(VertexKind::X(Phase::new(1, 2)), VertexKind::Z(Phase::ZERO));
    assert!(find_matches(fwd(RuleName::K1), &d).is_empty());
    assert!(find_matches(fwd(RuleName::K2), &d).is_empty());
}

#[test]
fn hopf_start_simplifies_within_six_steps() {
    let start = replay_derivation("hopf").unwrap().start;
    let s = simplify(&start, Strategy::Full, 1000, ScalarMode::UpToScalar);
    assert!(!s.hit_limit);
    assert!(s.trace.len() <= 6, "{} steps", s.trace.len());
    assert_eq!(s.diagram.components().len(), 2);
    assert!(same_up_to_scalar(&start, &s.diagram));
}

#[test]
fn minimal_wire_is_untouched() {
    let s = simplify(&bare_wire(), Strategy::Full, 1000, ScalarMode::UpToScalar);
    assert!(s.trace.is_empty());
    assert_eq!(s.diagram.size(), bare_wire().size());
}

#[test]
fn ghz_with_zero_plugged_splits_into_points() {
    let d = ghz_state().plug(Side::Output, 0, Point::ZPlus).unwrap();
    let s = simplify(&d, Strategy::Safe, 1000, ScalarMode::UpToScalar);
    let spiders: Vec<VertexKind> = s
        .diagram
        .vertices()
        .map(|(_, k)| k)
        .filter(VertexKind::is_spider)
        .collect();
    assert_eq!(spiders, vec![Point::ZPlus.kind(); 2]);
    assert_eq!(s.diagram.outputs().len(), 2);
    assert!(same_up_to_scalar(&d, &s.diagram));
}

#[test]
fn soundness_at_seed_42() {
    for name in [RuleName::S1, RuleName::Hopf, RuleName::A] {
        let r = check_soundness(name, 200, 42);
        assert!(
            r.passed(),
            "{name}: {:?}",
            r.failures.first().map(|f| &f.reason)
        );
        assert!(r.checks >= 200);
    }
}

#[test]
fn strict_mode_keeps_the_scalar() {
    let mut strict_checks = 0;
    for name in RuleName::ALL {
        for seed in 0..20 {
            let d = sample_pattern(name, seed);
            let before = evaluate(&d).unwrap();
            for m in find_matches_in(fwd(name), &d, ScalarMode::Strict) {
                let after = evaluate(&apply_in(&d, &m, ScalarMode::Strict).unwrap()).unwrap();
                let scale = before.max_abs().max(1.0);
                assert!(
                    diff(&before, &after) <= 1e-9 * scale,
                    "{name} seed {seed}: {m}"
                );
                strict_checks += 1;
            }
        }
    }
    assert!(strict_checks > 100);
}

#[test]
fn rewrites_leave_disjoint_parts_alone() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let params = RandomParams {
        max_vertices: 5,
        ..RandomParams::default()
    };
    for name in RuleName::ALL {
        for seed in 0..10 {
            let pattern = sample_pattern(name, seed);
            let bystander = random_diagram(&mut rng, &params);
            let d = pattern.tensor(&bystander);
            let offset = pattern.vertex_count() as u32;
            let keep: BTreeSet<_> = d
                .vertex_ids()
                .into_iter()
                .filter(|v| v.0 >= offset)
                .collect();
            let reference = evaluate(&d.induced(&keep)).unwrap();
            for m in find_matches(fwd(name), &d) {
                if m.vertices().iter().any(|v| keep.contains(v)) {
                    continue;
                }
                let out = apply(&d, &m).unwrap();
                let after = evaluate(&out.induced(&keep)).unwrap();
                assert_eq!(after, reference, "{name} seed {seed}: {m}");
            }
        }
    }
}

#[test]
fn safe_strategy_terminates_by_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let params = RandomParams::default();
    for _ in 0..200 {
        let d = random_diagram(&mut rng, &params);
        let s = simplify(&d, Strategy::Safe, d.size() + 1, ScalarMode::UpToScalar);
        assert!(!s.hit_limit);
        assert!(s.diagram.size() <= d.size());
        assert!(same_up_to_scalar(&d, &s.diagram));
    }
}

#[test]
fn safe_runs_agree_under_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let params = RandomParams::default();
    for _ in 0..100 {
        let d = random_diagram(&mut rng, &params);
        let mut order = d.vertex_ids();
        order.reverse();
        let e = d.renumbered(&order).unwrap();
        let a = simplify(&d, Strategy::Safe, 1000, ScalarMode::UpToScalar).diagram;
        let b = simplify(&e, Strategy::Safe, 1000, ScalarMode::UpToScalar).diagram;
        assert!(same_up_to_scalar(&a, &b));
    }
}

#[test]
fn embedded_patterns_stay_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for name in RuleName::ALL {
        let pattern = sample_pattern(name, 3);
        let context = random_diagram(&mut rng, &RandomParams::default());
        let d = embed(&mut rng, &pattern, &context, 4);
        for m in find_matches(fwd(name), &d) {
            assert!(
                same_up_to_scalar(&d, &apply(&d, &m).unwrap()),
                "{name}: {m}"
            );
        }
    }
}
