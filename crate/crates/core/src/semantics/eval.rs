//! Dense tensor-network contraction of diagrams.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Result, ZxError};
use crate::graph::{Diagram, VertexKind};
use crate::phase::Phase;

use super::matrix::{Matrix, C};

pub const DEFAULT_MAX_WIRES: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContractionOrder {
    /// Repeatedly contract the pair giving the smallest result.
    Greedy,
    /// Fold tensors in vertex-id order.
    Sequential,
}

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    /// Largest tensor rank allowed, interface included.
    pub max_wires: usize,
    pub order: ContractionOrder,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            max_wires: DEFAULT_MAX_WIRES,
            order: ContractionOrder::Greedy,
        }
    }
}

/// A tensor over labeled binary indices; `idx[0]` is the most significant bit.
#[derive(Clone, Debug)]
struct Tensor {
    idx: Vec<usize>,
    data: Vec<C>,
}

fn one() -> C {
    C::new(1.0, 0.0)
}

fn z_spider(legs: usize, phase: Phase) -> Vec<C> {
    if legs == 0 {
        return vec![one() + phase.unit()];
    }
    let mut data = vec![C::new(0.0, 0.0); 1 << legs];
    data[0] = one();
    data[(1 << legs) - 1] += phase.unit();
    data
}

/// Applies `H` to every leg of a Z spider tensor.
fn x_spider(legs: usize, phase: Phase) -> Vec<C> {
    let mut data = z_spider(legs, phase);
    let h = FRAC_1_SQRT_2;
    for leg in 0..legs {
        let bit = 1 << (legs - 1 - leg);
        for i in 0..data.len() {
            if i & bit == 0 {
                let (a, b) = (data[i], data[i | bit]);
                data[i] = (a + b) * h;
                data[i | bit] = (a - b) * h;
            }
        }
    }
    data
}

fn delta(a: usize, b: usize) -> Tensor {
    Tensor {
        idx: vec![a, b],
        data: vec![one(), C::new(0.0, 0.0), C::new(0.0, 0.0), one()],
    }
}

/// Scatters the bits of `value` (most significant first) into the positions
/// of a rank-`rank` index given by `positions`.
fn scatter(value: usize, positions: &[usize], rank: usize) -> usize {
    let n = positions.len();
    let mut out = 0;
    for (k, &p) in positions.iter().enumerate() {
        if value >> (n - 1 - k) & 1 == 1 {
            out |= 1 << (rank - 1 - p);
        }
    }
    out
}

fn contract(a: &Tensor, b: &Tensor) -> Tensor {
    let shared: Vec<usize> = a
        .idx
        .iter()
        .copied()
        .filter(|i| b.idx.contains(i))
        .collect();
    let a_free: Vec<usize> = (0..a.idx.len())
        .filter(|&p| !shared.contains(&a.idx[p]))
        .collect();
    let b_free: Vec<usize> = (0..b.idx.len())
        .filter(|&p| !shared.contains(&b.idx[p]))
        .collect();
    let a_sh: Vec<usize> = shared
        .iter()
        .map(|s| a.idx.iter().position(|x| x == s).unwrap())
        .collect();
    let b_sh: Vec<usize> = shared
        .iter()
        .map(|s| b.idx.iter().position(|x| x == s).unwrap())
        .collect();
    let (ra, rb) = (a.idx.len(), b.idx.len());
    let table = |n: usize, pos: &[usize], rank: usize| -> Vec<usize> {
        (0..1usize << n).map(|v| scatter(v, pos, rank)).collect()
    };
    let ta_free = table(a_free.len(), &a_free, ra);
    let tb_free = table(b_free.len(), &b_free, rb);
    let ta_sh = table(shared.len(), &a_sh, ra);
    let tb_sh = table(shared.len(), &b_sh, rb);

    let nb = b_free.len();
    let mut data = vec![C::new(0.0, 0.0); 1 << (a_free.len() + nb)];
    for (i, &pa) in ta_free.iter().enumerate() {
        for (j, &pb) in tb_free.iter().enumerate() {
            let mut acc = C::new(0.0, 0.0);
            for (sa, sb) in ta_sh.iter().zip(&tb_sh) {
                acc += a.data[pa | sa] * b.data[pb | sb];
            }
            data[(i << nb) | j] = acc;
        }
    }
    let idx = a_free
        .iter()
        .map(|&p| a.idx[p])
        .chain(b_free.iter().map(|&p| b.idx[p]))
        .collect();
    Tensor { idx, data }
}

fn result_rank(a: &Tensor, b: &Tensor) -> usize {
    let shared = a.idx.iter().filter(|i| b.idx.contains(i)).count();
    a.idx.len() + b.idx.len() - 2 * shared
}

/// Builds the generator tensors. Returns the network and the open index for
/// each output then each input.
fn network(d: &Diagram) -> (Vec<Tensor>, Vec<usize>) {
    let edges: Vec<_> = d.edges().collect();
    let mut next = edges.len();
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut tensors = Vec::new();
    // leg index lists per vertex; the second end of a self-loop gets its own
    // index joined back by a delta
    let mut legs: std::collections::BTreeMap<_, Vec<usize>> = d
        .vertex_ids()
        .into_iter()
        .map(|v| (v, Vec::new()))
        .collect();
    for (k, &(_, a, b)) in edges.iter().enumerate() {
        legs.get_mut(&a).unwrap().push(k);
        if a == b {
            let twin = fresh();
            legs.get_mut(&b).unwrap().push(twin);
            tensors.push(delta(k, twin));
        } else {
            legs.get_mut(&b).unwrap().push(k);
        }
    }
    let mut open = std::collections::BTreeMap::new();
    for (v, kind) in d.vertices() {
        let idx = legs[&v].clone();
        let data = match kind {
            VertexKind::Z(p) => z_spider(idx.len(), p),
            VertexKind::X(p) => x_spider(idx.len(), p),
            VertexKind::H => {
                let h = C::new(FRAC_1_SQRT_2, 0.0);
                vec![h, h, h, -h]
            }
            VertexKind::Diamond => vec![C::new(std::f64::consts::SQRT_2, 0.0)],
            VertexKind::Boundary => {
                let o = fresh();
                open.insert(v, o);
                tensors.push(delta(o, idx[0]));
                continue;
            }
        };
        tensors.push(Tensor { idx, data });
    }
    let order = d
        .outputs()
        .iter()
        .chain(d.inputs())
        .map(|v| open[v])
        .collect();
    (tensors, order)
}

/// Contracts the diagram to its matrix.
pub fn evaluate_with(d: &Diagram, opts: &EvalOptions) -> Result<Matrix> {
    let (m, n) = (d.outputs().len(), d.inputs().len());
    if m + n > opts.max_wires {
        return Err(ZxError::Resource {
            wires: m + n,
            cap: opts.max_wires,
        });
    }
    let (mut tensors, open) = network(d);
    for t in &tensors {
        if t.idx.len() > opts.max_wires {
            return Err(ZxError::Resource {
                wires: t.idx.len(),
                cap: opts.max_wires,
            });
        }
    }
    let check = |t: &Tensor| -> Result<()> {
        if t.idx.len() > opts.max_wires {
            Err(ZxError::Resource {
                wires: t.idx.len(),
                cap: opts.max_wires,
            })
        } else {
            Ok(())
        }
    };

    let result = match opts.order {
        ContractionOrder::Sequential => {
            let mut acc = Tensor {
                idx: vec![],
                data: vec![one()],
            };
            for t in &tensors {
                if result_rank(&acc, t) > opts.max_wires {
                    return Err(ZxError::Resource {
                        wires: result_rank(&acc, t),
                        cap: opts.max_wires,
                    });
                }
                acc = contract(&acc, t);
            }
            acc
        }
        ContractionOrder::Greedy => {
            while tensors.len() > 1 {
                let mut best: Option<(bool, usize, usize, usize)> = None;
                for i in 0..tensors.len() {
                    for j in i + 1..tensors.len() {
                        let connected = tensors[i].idx.iter().any(|x| tensors[j].idx.contains(x));
                        let key = (!connected, result_rank(&tensors[i], &tensors[j]), i, j);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
                let (_, _, i, j) = best.unwrap();
                let b = tensors.swap_remove(j);
                let a = tensors.swap_remove(i);
                let t = contract(&a, &b);
                check(&t)?;
                tensors.push(t);
            }
            tensors.pop().unwrap_or(Tensor {
                idx: vec![],
                data: vec![one()],
            })
        }
    };

    // permute open indices into (outputs, inputs) order
    let rank = result.idx.len();
    let pos: Vec<usize> = open
        .iter()
        .map(|o| result.idx.iter().position(|x| x == o).unwrap())
        .collect();
    let mut out = Matrix::zeros(1 << m, 1 << n);
    for v in 0..1usize << rank {
        let src = scatter(v, &pos, rank);
        out.set(v >> n, v & ((1 << n) - 1), result.data[src]);
    }
    Ok(out)
}

/// Evaluates with the default options (greedy order, 14-wire cap).
pub fn evaluate(d: &Diagram) -> Result<Matrix> {
    evaluate_with(d, &EvalOptions::default())
}
