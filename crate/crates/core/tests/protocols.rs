mod common;

use common::*;
use zx_core::evaluate;
use zx_core::protocols::{
    ghz_class_state, qkd_check_lemmas, qkd_simulate, sdc_decode, sdc_n_ghz_verify, GhzClassIndex,
    Table,
};
use zx_core::rewrite::{replay_derivation, RuleName};
use zx_core::semantics::{equal_up_to_scalar, Matrix};

fn proportional(a: &Matrix, b: &Matrix) -> bool {
    equal_up_to_scalar(a, b, 1e-9).unwrap().equal
}

#[test]
fn derivations_end_at_the_stated_results() {
    let alpha = std::f64::consts::PI / 3.0;
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let cases = [
        ("hopf", real(&[&[1.0, 1.0], &[0.0, 0.0]])),
        (
            "rule_a",
            mat(&[vec![z, cis(-alpha)], vec![z, z], vec![z, z], vec![one, z]]),
        ),
        ("ghz_plug0", real(&[&[1.0], &[0.0], &[0.0], &[0.0]])),
        ("ghz_plug1", real(&[&[0.0], &[0.0], &[0.0], &[1.0]])),
        ("w_plug0", real(&[&[0.0], &[1.0], &[1.0], &[0.0]])),
        ("w_plug1", real(&[&[1.0], &[0.0], &[0.0], &[0.0]])),
        ("qkd_core", real(&[&[1.0], &[-1.0]])),
    ];
    for (name, want) in cases {
        let d = replay_derivation(name).unwrap();
        assert!(d.passed(), "{name}");
        assert!(
            proportional(&evaluate(&d.result).unwrap(), &want),
            "{name} result"
        );
        assert!(
            proportional(&evaluate(&d.start).unwrap(), &want),
            "{name} start"
        );
    }
}

#[test]
fn derivation_traces_use_the_named_rules() {
    let hopf = replay_derivation("hopf").unwrap();
    assert_eq!(hopf.trace.len(), 6);
    let w1 = replay_derivation("w_plug1").unwrap();
    assert!(w1.trace.rules().iter().any(|r| r.name == RuleName::E));
    let q = replay_derivation("qkd_core").unwrap();
    assert_eq!(q.trace.rules().last().map(|r| r.name), Some(RuleName::S1));
    assert!(q.trace.rules().iter().any(|r| r.name == RuleName::A));
}

#[test]
fn tables_agree_up_to_a_phase() {
    for k in GhzClassIndex::all() {
        let a = evaluate(&ghz_class_state(k, Table::Standard)).unwrap();
        let b = evaluate(&ghz_class_state(k, Table::Alternative)).unwrap();
        let v = equal_up_to_scalar(&b, &a, 1e-9).unwrap();
        assert!(v.equal, "row {k}");
        assert!((v.scalar.unwrap().norm() - 1.0).abs() <= 1e-9, "row {k}");
    }
}

#[test]
fn every_class_state_decodes_to_its_index() {
    for table in Table::ALL {
        for k in GhzClassIndex::all() {
            let bits = sdc_decode(k, table).unwrap();
            let value = bits.iter().fold(0, |acc, &b| acc << 1 | b);
            assert_eq!(value, k.value(), "{} {k}", table.name());
        }
    }
}

#[test]
fn n_qubit_encodings_are_distinct() {
    for n in [4, 5] {
        let r = sdc_n_ghz_verify(n).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.cases.len(), 1 << n);
        assert!(r.counts.contains(&("distinct outcomes".into(), 1 << n)));
    }
    assert!(sdc_n_ghz_verify(2).is_err());
}

#[test]
fn key_distribution() {
    assert!(qkd_check_lemmas().unwrap().passed());
    let (r, rounds) = qkd_simulate(10_000, 7).unwrap();
    assert!(r.passed(), "{r}");
    for round in rounds.iter().filter(|r| r.accepted) {
        let o = round.outcomes.unwrap();
        let d = round.decider.unwrap();
        let others: Vec<bool> = (0..3).filter(|&i| i != d).map(|i| o[i]).collect();
        assert_eq!(others[0], others[1]);
    }
}
