//! Hand-written reference matrices and one-vertex diagrams, shared by the
//! integration tests and the acceptance target.

#![allow(dead_code)]

use std::f64::consts::FRAC_1_SQRT_2;

use zx_core::semantics::{Matrix, C};
use zx_core::{evaluate, Diagram, Phase, VertexKind};

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn cis(theta: f64) -> C {
    C::from_polar(1.0, theta)
}

/// Row-major construction from nested rows.
pub fn mat(rows: &[Vec<C>]) -> Matrix {
    let r = rows.len();
    let k = rows.first().map_or(0, Vec::len);
    let data: Vec<C> = rows.iter().flatten().copied().collect();
    Matrix::from_vec(r, k, data)
}

pub fn real(rows: &[&[f64]]) -> Matrix {
    Matrix::real(rows)
}

/// Largest entrywise distance; infinite on a shape mismatch.
pub fn diff(a: &Matrix, b: &Matrix) -> f64 {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return f64::INFINITY;
    }
    a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `|x⟩⟨y|` for column vectors given as slices, without conjugation of `y`
/// (callers pass real bras).
fn outer(x: &[C], y: &[C]) -> Vec<Vec<C>> {
    x.iter()
        .map(|&a| y.iter().map(|&b| a * b).collect())
        .collect()
}

fn kron_vec(a: &[C], b: &[C]) -> Vec<C> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| x * y))
        .collect()
}

fn power(v: &[C], n: usize) -> Vec<C> {
    (0..n).fold(vec![c(1.0, 0.0)], |acc, _| kron_vec(&acc, v))
}

fn add(a: &mut [Vec<C>], b: &[Vec<C>], s: C) {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            *x += s * y;
        }
    }
}

/// `|0…0⟩⟨0…0| + e^{iα}|1…1⟩⟨1…1|` with `m` outputs and `n` inputs.
pub fn z_spider_ref(n: usize, m: usize, alpha: f64) -> Matrix {
    let zero = [c(1.0, 0.0), c(0.0, 0.0)];
    let one = [c(0.0, 0.0), c(1.0, 0.0)];
    let mut rows = outer(&power(&zero, m), &power(&zero, n));
    add(
        &mut rows,
        &outer(&power(&one, m), &power(&one, n)),
        cis(alpha),
    );
    mat(&rows)
}

/// `|+…+⟩⟨+…+| + e^{iα}|−…−⟩⟨−…−|` with normalized `|±⟩`.
pub fn x_spider_ref(n: usize, m: usize, alpha: f64) -> Matrix {
    let plus = [c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)];
    let minus = [c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)];
    let mut rows = outer(&power(&plus, m), &power(&plus, n));
    add(
        &mut rows,
        &outer(&power(&minus, m), &power(&minus, n)),
        cis(alpha),
    );
    mat(&rows)
}

/// Reference X(α) wire: `e^{−iα/2}[[cos α/2, i sin α/2], [i sin α/2, cos α/2]]`.
pub fn x11_table(alpha: f64) -> Matrix {
    let (s, co) = (alpha / 2.0).sin_cos();
    let g = cis(-alpha / 2.0);
    mat(&[vec![g * co, g * c(0.0, s)], vec![g * c(0.0, s), g * co]])
}

/// Reference X(α) point: `cos(α/2)|0⟩ + i sin(α/2)|1⟩`.
pub fn x_point_table(alpha: f64) -> Matrix {
    let (s, co) = (alpha / 2.0).sin_cos();
    mat(&[vec![c(co, 0.0)], vec![c(0.0, s)]])
}

pub fn cnot_ref() -> Matrix {
    real(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
}

/// One spider with `n` inputs then `m` outputs.
pub fn spider(kind: VertexKind, n: usize, m: usize) -> Diagram {
    let mut d = Diagram::new();
    let v = d.add_vertex(kind);
    for _ in 0..n {
        let b = d.add_input();
        d.add_edge(b, v).unwrap();
    }
    for _ in 0..m {
        let b = d.add_output();
        d.add_edge(v, b).unwrap();
    }
    d
}

pub fn bare_wire() -> Diagram {
    let mut d = Diagram::new();
    let i = d.add_input();
    let o = d.add_output();
    d.add_edge(i, o).unwrap();
    d
}

pub fn swap() -> Diagram {
    let mut d = Diagram::new();
    let (a, b) = (d.add_input(), d.add_input());
    let (x, y) = (d.add_output(), d.add_output());
    d.add_edge(a, y).unwrap();
    d.add_edge(b, x).unwrap();
    d
}

/// Two outputs joined by a wire.
pub fn cap() -> Diagram {
    let mut d = Diagram::new();
    let (a, b) = (d.add_output(), d.add_output());
    d.add_edge(a, b).unwrap();
    d
}

/// Two inputs joined by a wire.
pub fn cup() -> Diagram {
    let mut d = Diagram::new();
    let (a, b) = (d.add_input(), d.add_input());
    d.add_edge(a, b).unwrap();
    d
}

/// Phases used for the generator checks.
pub fn sample_phases() -> Vec<Phase> {
    vec![
        Phase::ZERO,
        Phase::new(1, 4),
        Phase::new(1, 3),
        Phase::new(1, 2),
        Phase::PI,
        Phase::new(5, 3),
        Phase::new(7, 4),
    ]
}

pub const ARITIES: [(usize, usize); 7] = [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2), (0, 3)];

/// One row of the generator check: the largest entrywise error seen.
pub struct EntryCheck {
    pub name: &'static str,
    pub cases: usize,
    pub max_diff: f64,
}

fn check(name: &'static str, cases: Vec<(Diagram, Matrix)>) -> EntryCheck {
    let max_diff = cases
        .iter()
        .map(|(d, m)| diff(&evaluate(d).unwrap(), m))
        .fold(0.0, f64::max);
    EntryCheck {
        name,
        cases: cases.len(),
        max_diff,
    }
}

/// Every generator entry checked entrywise against its reference value. The
/// X(α) wire and point are checked at α ∈ {0, π}, where the reference formulas
/// agree with the X-spider definition; [`x_convention_checks`] covers the rest.
pub fn generator_checks() -> Vec<EntryCheck> {
    let h = FRAC_1_SQRT_2;
    let phases = sample_phases();
    let pauli_phases = [Phase::ZERO, Phase::PI];
    vec![
        check("identity", vec![(bare_wire(), Matrix::identity(2))]),
        check(
            "hadamard",
            vec![(spider(VertexKind::H, 1, 1), real(&[&[h, h], &[h, -h]]))],
        ),
        check(
            "swap",
            vec![(
                swap(),
                real(&[
                    &[1.0, 0.0, 0.0, 0.0],
                    &[0.0, 0.0, 1.0, 0.0],
                    &[0.0, 1.0, 0.0, 0.0],
                    &[0.0, 0.0, 0.0, 1.0],
                ]),
            )],
        ),
        check(
            "cap",
            vec![(cap(), real(&[&[1.0], &[0.0], &[0.0], &[1.0]]))],
        ),
        check("cup", vec![(cup(), real(&[&[1.0, 0.0, 0.0, 1.0]]))]),
        check(
            "Z spider",
            phases
                .iter()
                .flat_map(|&p| {
                    ARITIES.iter().map(move |&(n, m)| {
                        (
                            spider(VertexKind::Z(p), n, m),
                            z_spider_ref(n, m, p.radians()),
                        )
                    })
                })
                .collect(),
        ),
        check(
            "X spider",
            phases
                .iter()
                .flat_map(|&p| {
                    ARITIES.iter().map(move |&(n, m)| {
                        (
                            spider(VertexKind::X(p), n, m),
                            x_spider_ref(n, m, p.radians()),
                        )
                    })
                })
                .collect(),
        ),
        check(
            "Z(α) wire",
            phases
                .iter()
                .map(|&p| {
                    let m = mat(&[
                        vec![c(1.0, 0.0), c(0.0, 0.0)],
                        vec![c(0.0, 0.0), cis(p.radians())],
                    ]);
                    (spider(VertexKind::Z(p), 1, 1), m)
                })
                .collect(),
        ),
        check(
            "X(α) wire",
            pauli_phases
                .iter()
                .map(|&p| (spider(VertexKind::X(p), 1, 1), x11_table(p.radians())))
                .collect(),
        ),
        check("diamond", {
            let mut d = Diagram::new();
            d.add_vertex(VertexKind::Diamond);
            vec![(d, mat(&[vec![c(2f64.sqrt(), 0.0)]]))]
        }),
        check(
            "Z(α) point",
            phases
                .iter()
                .map(|&p| {
                    (
                        spider(VertexKind::Z(p), 0, 1),
                        mat(&[vec![c(1.0, 0.0)], vec![cis(p.radians())]]),
                    )
                })
                .collect(),
        ),
        check(
            "X(α) point",
            pauli_phases
                .iter()
                .map(|&p| {
                    // the reference point omits the scalar √2·e^{−iα/2}
                    let s = cis(-p.radians() / 2.0) * 2f64.sqrt();
                    let m = x_point_table(p.radians()).scale(s);
                    (spider(VertexKind::X(p), 0, 1), m)
                })
                .collect(),
        ),
    ]
}

/// The reference X(α) wire and point equal the X spider of phase −α: the wire
/// entrywise, the point up to the scalar `√2·e^{−iα/2}`.
pub fn x_convention_checks() -> Vec<EntryCheck> {
    let phases = sample_phases();
    vec![
        check(
            "X(α) wire, negated phase",
            phases
                .iter()
                .map(|&p| (spider(VertexKind::X(-p), 1, 1), x11_table(p.radians())))
                .collect(),
        ),
        check(
            "X(α) point, negated phase",
            phases
                .iter()
                .map(|&p| {
                    let s = cis(-p.radians() / 2.0) * 2f64.sqrt();
                    (
                        spider(VertexKind::X(-p), 0, 1),
                        x_point_table(p.radians()).scale(s),
                    )
                })
                .collect(),
        ),
    ]
}

/// Counts from the structural property sweep over random diagrams.
#[derive(Debug, Default)]
pub struct Structural {
    pub diagrams: usize,
    pub round_trip_failures: usize,
    pub relabel_max_diff: f64,
    pub sequential_pairs: usize,
    pub sequential_max_diff: f64,
    pub parallel_max_diff: f64,
}

fn rel(a: &Matrix, b: &Matrix) -> f64 {
    diff(a, b) / a.max_abs().max(b.max_abs()).max(1.0)
}

/// Evaluation with room for the larger composites built below.
fn eval_wide(d: &Diagram) -> zx_core::Result<Matrix> {
    use zx_core::semantics::{evaluate_with, EvalOptions};
    evaluate_with(
        d,
        &EvalOptions {
            max_wires: 24,
            ..EvalOptions::default()
        },
    )
}

/// Round-trip, relabeling and composition checks on `n` random diagrams.
pub fn structural_sweep(n: usize, seed: u64) -> Structural {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use zx_core::random::{random_diagram, RandomParams};
    use zx_core::{iso, zxg};

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomParams {
        max_vertices: 7,
        max_boundaries: 4,
        max_extra_edges: 4,
    };
    let mut out = Structural::default();
    for _ in 0..n {
        let d = random_diagram(&mut rng, &params);
        out.diagrams += 1;
        let back = zxg::parse(&zxg::serialize(&d)).unwrap();
        if !iso::isomorphic(&d, &back) {
            out.round_trip_failures += 1;
        }

        let m = eval_wide(&d).unwrap();
        let mut order = d.vertex_ids();
        order.shuffle(&mut rng);
        let relabeled = eval_wide(&d.renumbered(&order).unwrap()).unwrap();
        out.relabel_max_diff = out.relabel_max_diff.max(rel(&m, &relabeled));

        let e = random_diagram(&mut rng, &params);
        let me = eval_wide(&e).unwrap();
        let par = eval_wide(&d.tensor(&e)).unwrap();
        out.parallel_max_diff = out.parallel_max_diff.max(rel(&par, &m.kron(&me)));

        // draw partners until one fits after `d`
        for _ in 0..50 {
            let f = random_diagram(&mut rng, &params);
            if f.inputs().len() == d.outputs().len() {
                let mf = eval_wide(&f).unwrap();
                let seq = eval_wide(&d.then(&f).unwrap()).unwrap();
                out.sequential_max_diff =
                    out.sequential_max_diff.max(rel(&seq, &mf.mul(&m).unwrap()));
                out.sequential_pairs += 1;
                break;
            }
        }
    }
    out
}

/// Largest relative disagreement between greedy and sequential contraction.
pub fn contraction_order_sweep(n: usize, seed: u64) -> f64 {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use zx_core::random::{random_diagram, RandomParams};
    use zx_core::semantics::{evaluate_with, ContractionOrder, EvalOptions};

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomParams {
        max_vertices: 10,
        max_boundaries: 4,
        max_extra_edges: 6,
    };
    let opts = |order| EvalOptions {
        max_wires: 24,
        order,
    };
    (0..n)
        .map(|_| {
            let d = random_diagram(&mut rng, &params);
            let g = evaluate_with(&d, &opts(ContractionOrder::Greedy)).unwrap();
            let s = evaluate_with(&d, &opts(ContractionOrder::Sequential)).unwrap();
            rel(&g, &s)
        })
        .fold(0.0, f64::max)
}
