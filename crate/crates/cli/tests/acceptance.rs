//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::{Command, ExitCode};

use common::*;
use zx_core::protocols::{
    cnot, ghz_class_state, ghz_measurement, qkd_check_lemmas, qkd_simulate, sdc_n_ghz_verify,
    sdc_verify_all, w_state, GhzClassIndex, Table,
};
use zx_core::rewrite::{check_soundness, replay_derivation, RuleName};
use zx_core::semantics::{amplitude, equal_up_to_scalar};
use zx_core::{evaluate, Point, Side};

struct Verdict {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Verdict);

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn generator_fidelity() -> Verdict {
    let entries = generator_checks();
    let worst = entries.iter().map(|e| e.max_diff).fold(0.0, f64::max);
    let convention = x_convention_checks();
    let conv_worst = convention.iter().map(|e| e.max_diff).fold(0.0, f64::max);
    let cnot = equal_up_to_scalar(&evaluate(&cnot()).unwrap(), &cnot_ref(), 1e-12).unwrap();
    let pass = worst <= 1e-12 && conv_worst <= 1e-12 && cnot.equal;
    verdict(
        pass,
        format!(
            "{} entries, max error {worst:.1e}; CNOT residual {:.1e}; reference X(α) wire and point match X(−α) \
             (error {conv_worst:.1e}) and X(α) only at α ∈ {{0, π}}",
            entries.len(),
            cnot.max_residual
        ),
    )
}

fn rule_soundness() -> Verdict {
    let (mut samples, mut checks, mut failures) = (0, 0, 0);
    for name in RuleName::ALL {
        for seed in 1..=5 {
            let r = check_soundness(name, 200, seed);
            samples += r.samples;
            checks += r.checks;
            failures += r.failures.len();
        }
    }
    verdict(
        samples == 13_000 && failures == 0,
        format!("{samples} instances, {checks} match checks, {failures} failures"),
    )
}

fn derivation_replays() -> Verdict {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let alpha = std::f64::consts::PI / 3.0;
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
    let mut failed = Vec::new();
    let mut steps = Vec::new();
    for (name, want) in &cases {
        let d = replay_derivation(name).unwrap();
        let got = evaluate(&d.result).unwrap();
        if !equal_up_to_scalar(&got, want, 1e-9).unwrap().equal {
            failed.push(*name);
        }
        steps.push(format!("{name} {}", d.trace.len()));
    }
    verdict(
        failed.is_empty(),
        format!("steps: {}; failed: {failed:?}", steps.join(", ")),
    )
}

fn sdc_correctness() -> Verdict {
    let r = sdc_verify_all().unwrap();
    // residual: every entry but the decoded one vanishes
    let mut worst = 0.0f64;
    for table in Table::ALL {
        for k in GhzClassIndex::all() {
            let v = evaluate(
                &ghz_class_state(k, table)
                    .then(&ghz_measurement(3).unwrap())
                    .unwrap(),
            )
            .unwrap();
            let peak = v.data()[k.value() as usize].norm();
            let stray = v
                .data()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k.value() as usize)
                .map(|(_, z)| z.norm())
                .fold(0.0, f64::max);
            worst = worst.max(stray / peak);
        }
    }
    verdict(
        r.passed() && r.cases.len() == 16 && worst <= 1e-9,
        format!(
            "{}/{} decoded, basis residual {worst:.1e}",
            r.pass_count(),
            r.cases.len()
        ),
    )
}

fn table_equivalence() -> Verdict {
    let mut ok = 0;
    let mut worst = 0.0f64;
    for k in GhzClassIndex::all() {
        let a = evaluate(&ghz_class_state(k, Table::Standard)).unwrap();
        let b = evaluate(&ghz_class_state(k, Table::Alternative)).unwrap();
        let v = equal_up_to_scalar(&b, &a, 1e-9).unwrap();
        let modulus_err = v.scalar.map_or(f64::INFINITY, |l| (l.norm() - 1.0).abs());
        worst = worst.max(modulus_err);
        if v.equal && modulus_err <= 1e-9 {
            ok += 1;
        }
    }
    verdict(ok == 8, format!("{ok}/8 rows, |λ| error {worst:.1e}"))
}

fn n_ghz() -> Verdict {
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [4, 5] {
        let r = sdc_n_ghz_verify(n).unwrap();
        let distinct = r
            .counts
            .iter()
            .find(|(k, _)| k == "distinct outcomes")
            .map_or(0, |&(_, v)| v);
        pass &= r.passed() && distinct == 1 << n;
        parts.push(format!("n={n}: {distinct}/{} distinct", 1 << n));
    }
    verdict(pass, parts.join(", "))
}

fn qkd_lemmas() -> Verdict {
    let zero_zero = real(&[&[1.0], &[0.0], &[0.0], &[0.0]]);
    let mut z_residual = 0.0f64;
    for w in 0..3 {
        let v = evaluate(&w_state().plug(Side::Output, w, Point::ZMinus).unwrap()).unwrap();
        let r = equal_up_to_scalar(&v, &zero_zero, 1e-9).unwrap();
        z_residual = z_residual.max(if r.equal {
            r.max_residual
        } else {
            f64::INFINITY
        });
    }
    let psi = evaluate(&w_state()).unwrap();
    let psi = psi.scale(c(1.0 / psi.norm(), 0.0));
    let mut unequal = 0.0f64;
    for decider in 0..3 {
        for (a, b) in [(Point::XPlus, Point::XMinus), (Point::XMinus, Point::XPlus)] {
            let mut effects = [Point::ZPlus; 3];
            let others: Vec<usize> = (0..3).filter(|&i| i != decider).collect();
            effects[others[0]] = a;
            effects[others[1]] = b;
            unequal = unequal.max(amplitude(&psi, &effects).unwrap().norm());
        }
    }
    let report = qkd_check_lemmas().unwrap();
    verdict(
        z_residual <= 1e-9 && unequal <= 1e-9 && report.passed(),
        format!(
            "z− residual {z_residual:.1e}; unequal-outcome amplitude {unequal:.1e}; {}/{} report cases",
            report.pass_count(),
            report.cases.len()
        ),
    )
}

fn qkd_monte_carlo() -> Verdict {
    let (r, rounds) = qkd_simulate(10_000, 7).unwrap();
    let mismatches = rounds
        .iter()
        .filter(|r| r.accepted)
        .filter(|r| {
            let o = r.outcomes.unwrap();
            let d = r.decider.unwrap();
            let others: Vec<bool> = (0..3).filter(|&i| i != d).map(|i| o[i]).collect();
            others[0] != others[1]
        })
        .count();
    let acceptance = &r.estimates[0];
    let decider = &r.estimates[1];
    let pass = mismatches == 0 && acceptance.within(0.375, 3.0) && decider.within(2.0 / 3.0, 3.0);
    verdict(
        pass,
        format!(
            "mismatches {mismatches}; acceptance {:.4} ± {:.4}; P(decider z+) {:.4} ± {:.4}",
            acceptance.value(),
            acceptance.std_error(),
            decider.value(),
            decider.std_error()
        ),
    )
}

fn structural() -> Verdict {
    let s = structural_sweep(500, 2024);
    let pass = s.diagrams == 500
        && s.round_trip_failures == 0
        && s.relabel_max_diff <= 1e-12
        && s.sequential_max_diff <= 1e-12
        && s.parallel_max_diff <= 1e-12;
    verdict(
        pass,
        format!(
            "{} diagrams, {} round-trip failures, relabel {:.1e}, sequential {:.1e} over {} pairs, parallel {:.1e}",
            s.diagrams,
            s.round_trip_failures,
            s.relabel_max_diff,
            s.sequential_max_diff,
            s.sequential_pairs,
            s.parallel_max_diff
        ),
    )
}

fn cli_determinism() -> Verdict {
    let runs = [
        vec!["verify", "sdc-ghz"],
        vec!["verify", "qkd-w3", "--rounds", "10000", "--seed", "7"],
    ];
    let mut parts = Vec::new();
    let mut pass = true;
    for args in runs {
        let out: Vec<_> = (0..2)
            .map(|_| {
                Command::new(env!("CARGO_BIN_EXE_zx"))
                    .args(&args)
                    .output()
                    .unwrap()
            })
            .collect();
        let same = out[0].stdout == out[1].stdout;
        let ok = out.iter().all(|o| o.status.code() == Some(0));
        pass &= same && ok;
        parts.push(format!(
            "`{}`: {} bytes, {}, exit {}",
            args.join(" "),
            out[0].stdout.len(),
            if same { "identical" } else { "DIFFERENT" },
            out[0].status.code().unwrap_or(-1)
        ));
    }
    verdict(pass, parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("generator fidelity", generator_fidelity),
        ("rule soundness", rule_soundness),
        ("derivation replays", derivation_replays),
        ("superdense coding", sdc_correctness),
        ("table equivalence", table_equivalence),
        ("n-qubit superdense coding", n_ghz),
        ("key distribution lemmas", qkd_lemmas),
        ("key distribution simulation", qkd_monte_carlo),
        ("structural properties", structural),
        ("cli determinism", cli_determinism),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        if !v.pass {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<28} {}  {}",
            i + 1,
            name,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!(
        "acceptance: {}/{} pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
