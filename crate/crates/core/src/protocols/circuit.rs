//! Gates and a small wire-by-wire circuit builder.

use std::fmt;
use std::str::FromStr;

use crate::error::ZxError;
use crate::graph::{Diagram, VertexId, VertexKind};
use crate::phase::Phase;

/// Single-qubit Paulis up to the phases used by the encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Z,
    /// `iσy = σz·σx`
    IY,
    /// `−iσy = σx·σz`
    MinusIY,
}

impl Pauli {
    pub const ENCODING: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::IY, Pauli::Z];

    pub fn name(self) -> &'static str {
        match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Z => "Z",
            Pauli::IY => "iY",
            Pauli::MinusIY => "-iY",
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pauli {
    type Err = ZxError;
    fn from_str(s: &str) -> Result<Pauli, ZxError> {
        match s {
            "I" => Ok(Pauli::I),
            "X" => Ok(Pauli::X),
            "Z" => Ok(Pauli::Z),
            "iY" => Ok(Pauli::IY),
            "-iY" | "minus_iY" => Ok(Pauli::MinusIY),
            _ => Err(ZxError::Argument(format!("unknown Pauli `{s}`"))),
        }
    }
}

/// Builds circuits gate by gate; each wire ends at the most recent vertex.
pub struct Circuit {
    d: Diagram,
    frontier: Vec<VertexId>,
}

impl Circuit {
    pub fn new(wires: usize) -> Circuit {
        let mut d = Diagram::new();
        let frontier = (0..wires).map(|_| d.add_input()).collect();
        Circuit { d, frontier }
    }

    pub fn wires(&self) -> usize {
        self.frontier.len()
    }

    /// Appends a one-in one-out vertex on `wire`.
    pub fn node(&mut self, wire: usize, kind: VertexKind) -> VertexId {
        let v = self.d.add_vertex(kind);
        self.d
            .add_edge(self.frontier[wire], v)
            .expect("frontier has room");
        self.frontier[wire] = v;
        v
    }

    pub fn h(&mut self, wire: usize) -> &mut Self {
        self.node(wire, VertexKind::H);
        self
    }

    pub fn pauli(&mut self, wire: usize, p: Pauli) -> &mut Self {
        let (x, z) = (VertexKind::X(Phase::PI), VertexKind::Z(Phase::PI));
        match p {
            Pauli::I => {}
            Pauli::X => {
                self.node(wire, x);
            }
            Pauli::Z => {
                self.node(wire, z);
            }
            Pauli::IY => {
                self.node(wire, x);
                self.node(wire, z);
            }
            Pauli::MinusIY => {
                self.node(wire, z);
                self.node(wire, x);
            }
        }
        self
    }

    /// Z(0) on the control joined to X(0) on the target, with the √2 that
    /// makes the matrix exactly CNOT.
    pub fn cnot(&mut self, control: usize, target: usize) -> &mut Self {
        let c = self.node(control, VertexKind::Z(Phase::ZERO));
        let t = self.node(target, VertexKind::X(Phase::ZERO));
        self.d.add_edge(c, t).expect("spiders are uncapped");
        self.d.add_vertex(VertexKind::Diamond);
        self
    }

    pub fn finish(mut self) -> Diagram {
        for v in self.frontier.clone() {
            let o = self.d.add_output();
            self.d.add_edge(v, o).expect("frontier has room");
        }
        self.d
    }
}

/// `n` parallel bare wires.
pub fn wires(n: usize) -> Diagram {
    Circuit::new(n).finish()
}

pub fn pauli(p: Pauli) -> Diagram {
    let mut c = Circuit::new(1);
    c.pauli(0, p);
    c.finish()
}

pub fn hadamard() -> Diagram {
    let mut c = Circuit::new(1);
    c.h(0);
    c.finish()
}

pub fn cnot() -> Diagram {
    let mut c = Circuit::new(2);
    c.cnot(0, 1);
    c.finish()
}
