//! GHZ-class states and superdense coding.

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, ZxError};
use crate::graph::Diagram;
use crate::semantics::{equal_up_to_scalar, evaluate, Matrix, C, DEFAULT_TOL};

use super::circuit::{Circuit, Pauli};
use super::report::ProtocolReport;
use super::states::{ghz_n, ghz_state};

/// One of the eight GHZ-class states, numbered by its three decoded bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GhzClassIndex(u8);

impl GhzClassIndex {
    pub fn new(value: u8) -> Result<GhzClassIndex> {
        if value < 8 {
            Ok(GhzClassIndex(value))
        } else {
            Err(ZxError::OutOfRange {
                what: "GHZ class index",
                index: value as usize,
                len: 8,
            })
        }
    }

    pub fn all() -> impl Iterator<Item = GhzClassIndex> {
        (0..8).map(GhzClassIndex)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// `(b1, b2, b3)`: the sign bit, then `i` and `j` of `|0ij⟩ ± |1īj̄⟩`.
    pub fn bits(self) -> [u8; 3] {
        [self.0 >> 2 & 1, self.0 >> 1 & 1, self.0 & 1]
    }
}

impl fmt::Display for GhzClassIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which of the two unitary tables prepares the state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Table {
    Standard,
    Alternative,
}

impl Table {
    pub const ALL: [Table; 2] = [Table::Standard, Table::Alternative];

    pub fn name(self) -> &'static str {
        match self {
            Table::Standard => "standard",
            Table::Alternative => "alternative",
        }
    }

    /// Paulis applied to qubits 2 and 3 of the GHZ state.
    pub fn unitaries(self, k: GhzClassIndex) -> (Pauli, Pauli) {
        use Pauli::*;
        const STANDARD: [(Pauli, Pauli); 8] = [
            (I, I),
            (I, X),
            (X, I),
            (X, X),
            (Z, I),
            (Z, X),
            (IY, I),
            (IY, X),
        ];
        const ALTERNATIVE: [(Pauli, Pauli); 8] = [
            (Z, Z),
            (Z, IY),
            (IY, Z),
            (IY, IY),
            (I, Z),
            (I, IY),
            (X, Z),
            (X, IY),
        ];
        match self {
            Table::Standard => STANDARD[k.0 as usize],
            Table::Alternative => ALTERNATIVE[k.0 as usize],
        }
    }
}

impl FromStr for Table {
    type Err = ZxError;
    fn from_str(s: &str) -> Result<Table> {
        match s {
            "standard" => Ok(Table::Standard),
            "alternative" => Ok(Table::Alternative),
            _ => Err(ZxError::Argument(format!("unknown table `{s}`"))),
        }
    }
}

/// GHZ with the table's Paulis on qubits 2 and 3.
pub fn ghz_class_state(k: GhzClassIndex, table: Table) -> Diagram {
    let (p2, p3) = table.unitaries(k);
    let mut c = Circuit::new(3);
    c.pauli(1, p2).pauli(2, p3);
    ghz_state()
        .then(&c.finish())
        .expect("three wires on both sides")
}

/// CNOT from wire 1 onto each other wire, then H on wire 1.
pub fn ghz_measurement(n: usize) -> Result<Diagram> {
    if n < 2 {
        return Err(ZxError::Argument(format!(
            "GHZ measurement needs at least 2 qubits, got {n}"
        )));
    }
    let mut c = Circuit::new(n);
    for t in 1..n {
        c.cnot(0, t);
    }
    c.h(0);
    Ok(c.finish())
}

/// Index of the single nonzero entry of a state vector.
pub fn decode_basis(v: &Matrix, tol: f64) -> Result<usize> {
    let k = v.argmax();
    let peak = v.data()[k].norm();
    if peak <= tol {
        return Err(ZxError::NotBasisState("vector is zero".into()));
    }
    let stray = v
        .data()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, z)| z.norm())
        .fold(0.0, f64::max);
    if stray > tol * peak {
        return Err(ZxError::NotBasisState(format!(
            "largest entry {peak:.3e} at {k}, another entry {stray:.3e}"
        )));
    }
    Ok(k)
}

fn bit_string(value: usize, n: usize) -> String {
    (0..n)
        .map(|q| {
            if value >> (n - 1 - q) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

fn measure(state: &Diagram, n: usize) -> Result<Matrix> {
    evaluate(&state.then(&ghz_measurement(n)?)?)
}

/// The three bits read out after measuring the class state in the GHZ basis.
pub fn sdc_decode(k: GhzClassIndex, table: Table) -> Result<[u8; 3]> {
    let v = measure(&ghz_class_state(k, table), 3)?;
    let b = decode_basis(&v, DEFAULT_TOL)?;
    Ok([(b >> 2 & 1) as u8, (b >> 1 & 1) as u8, (b & 1) as u8])
}

fn basis_vector(n: usize, index: usize) -> Matrix {
    let mut data = vec![C::new(0.0, 0.0); 1 << n];
    data[index] = C::new(1.0, 0.0);
    Matrix::column(data)
}

/// Decodes all eight class states from both tables.
pub fn sdc_verify_all() -> Result<ProtocolReport> {
    let mut report = ProtocolReport::new("sdc-ghz");
    for table in Table::ALL {
        for k in GhzClassIndex::all() {
            let id = format!("{}/{k}", table.name());
            let expected = bit_string(k.0 as usize, 3);
            let v = measure(&ghz_class_state(k, table), 3)?;
            match decode_basis(&v, DEFAULT_TOL) {
                Ok(b) => {
                    if let Some(l) =
                        equal_up_to_scalar(&v, &basis_vector(3, b), DEFAULT_TOL)?.scalar
                    {
                        report.scalars.push((id.clone(), l));
                    }
                    report.case(id, &expected, bit_string(b, 3), b == k.0 as usize);
                }
                Err(e) => report.case(id, expected, e.to_string(), false),
            }
        }
    }
    Ok(report)
}

/// Every encoding on the `n`-qubit GHZ state: `{I, X}` on qubits 2 to n−1 and
/// one of `I, X, iY, Z` on qubit `n`, as Paulis for qubits 2..=n.
pub fn n_ghz_encodings(n: usize) -> Vec<Vec<Pauli>> {
    let middle = n.saturating_sub(2);
    let mut out = Vec::new();
    for mask in 0..1usize << middle {
        for last in Pauli::ENCODING {
            let mut e: Vec<Pauli> = (0..middle)
                .map(|q| {
                    if mask >> (middle - 1 - q) & 1 == 1 {
                        Pauli::X
                    } else {
                        Pauli::I
                    }
                })
                .collect();
            e.push(last);
            out.push(e);
        }
    }
    out
}

/// Bits an encoding should decode to: the sign flip, then one bit per
/// encoded qubit recording a bit flip.
fn predicted_bits(enc: &[Pauli]) -> usize {
    let last = *enc.last().expect("at least one encoded qubit");
    let sign = matches!(last, Pauli::Z | Pauli::IY) as usize;
    let mut bits = sign;
    for &p in enc {
        bits = bits << 1 | matches!(p, Pauli::X | Pauli::IY) as usize;
    }
    bits
}

/// Checks that the `2^n` encodings decode to distinct basis states.
pub fn sdc_n_ghz_verify(n: usize) -> Result<ProtocolReport> {
    if !(3..=6).contains(&n) {
        return Err(ZxError::Argument(format!(
            "N-GHZ superdense coding is checked for 3 ≤ n ≤ 6, got {n}"
        )));
    }
    let mut report = ProtocolReport::new(format!("sdc-{n}-ghz"));
    let mut seen = vec![false; 1 << n];
    for enc in n_ghz_encodings(n) {
        let id: Vec<&str> = enc.iter().map(|p| p.name()).collect();
        let id = id.join(",");
        let mut c = Circuit::new(n);
        for (q, &p) in enc.iter().enumerate() {
            c.pauli(q + 1, p);
        }
        let state = ghz_n(n).then(&c.finish())?;
        let expected = predicted_bits(&enc);
        match decode_basis(&measure(&state, n)?, DEFAULT_TOL) {
            Ok(b) => {
                let fresh = !seen[b];
                seen[b] = true;
                let actual = if fresh {
                    bit_string(b, n)
                } else {
                    format!("{} (collision)", bit_string(b, n))
                };
                report.case(id, bit_string(expected, n), actual, fresh && b == expected);
            }
            Err(e) => report.case(id, bit_string(expected, n), e.to_string(), false),
        }
    }
    report.counts.push((
        "distinct outcomes".into(),
        seen.iter().filter(|&&s| s).count(),
    ));
    Ok(report)
}
