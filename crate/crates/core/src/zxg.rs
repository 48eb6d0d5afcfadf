//! The `.zxg` text format and Graphviz export.
//!
//! ```text
//! # a one-output Z state
//! node a Z 0
//! node b0 B
//! edge a b0
//! outputs b0
//! ```
//!
//! Directives are `node <id> <kind> [phase]`, `edge <id> <id>`, `inputs <id>...`
//! and `outputs <id>...`. Phases are in units of π.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Result, ZxError};
use crate::graph::{Diagram, VertexId, VertexKind};
use crate::phase::Phase;

pub fn parse(text: &str) -> Result<Diagram> {
    let mut d = Diagram::new();
    let mut ids: HashMap<String, VertexId> = HashMap::new();
    let mut names: HashMap<VertexId, String> = HashMap::new();
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, args)) = toks.split_first() else {
            continue;
        };
        let syntax = |message: String| ZxError::Syntax { line, message };
        let lookup = |name: &str| {
            ids.get(name)
                .copied()
                .ok_or_else(|| syntax(format!("unknown node `{name}`")))
        };
        match head {
            "node" => {
                let (name, kind) = match args {
                    [name, k @ ("Z" | "X"), phase] => {
                        let p: Phase = phase
                            .parse()
                            .map_err(|_| syntax(format!("malformed phase `{phase}`")))?;
                        let kind = if *k == "Z" {
                            VertexKind::Z(p)
                        } else {
                            VertexKind::X(p)
                        };
                        (*name, kind)
                    }
                    [name, "H"] => (*name, VertexKind::H),
                    [name, "B"] => (*name, VertexKind::Boundary),
                    [name, "D"] => (*name, VertexKind::Diamond),
                    _ => {
                        return Err(syntax(format!(
                            "malformed node directive `{}`",
                            content.trim()
                        )))
                    }
                };
                if ids.contains_key(name) {
                    return Err(syntax(format!("duplicate node `{name}`")));
                }
                let v = d.add_vertex(kind);
                ids.insert(name.to_string(), v);
                names.insert(v, name.to_string());
            }
            "edge" => {
                let [a, b] = args else {
                    return Err(syntax("edge takes exactly two node ids".into()));
                };
                let (va, vb) = (lookup(a)?, lookup(b)?);
                d.add_edge(va, vb).map_err(|e| match e {
                    ZxError::DegreeCap { vertex, kind, cap } => ZxError::Invalid {
                        vertex: names[&vertex].clone(),
                        message: format!("line {line}: {kind} vertex exceeds degree {cap}"),
                    },
                    other => other,
                })?;
            }
            "inputs" | "outputs" => {
                let list = if head == "inputs" {
                    &mut inputs
                } else {
                    &mut outputs
                };
                for name in args {
                    list.push(lookup(name)?);
                }
            }
            other => return Err(syntax(format!("unknown directive `{other}`"))),
        }
    }

    let d = d.with_interface(inputs, outputs);
    d.validate_named(|v| names.get(&v).cloned().unwrap_or_else(|| v.to_string()))?;
    Ok(d)
}

fn kind_token(kind: VertexKind) -> String {
    match kind {
        VertexKind::Z(p) => format!("Z {p}"),
        VertexKind::X(p) => format!("X {p}"),
        VertexKind::H => "H".into(),
        VertexKind::Boundary => "B".into(),
        VertexKind::Diamond => "D".into(),
    }
}

pub fn serialize(d: &Diagram) -> String {
    let mut out = String::new();
    for (v, k) in d.vertices() {
        let _ = writeln!(out, "node {v} {}", kind_token(k));
    }
    for (_, a, b) in d.edges() {
        let _ = writeln!(out, "edge {a} {b}");
    }
    let list = |vs: &[VertexId]| vs.iter().map(|v| format!(" {v}")).collect::<String>();
    let _ = writeln!(out, "inputs{}", list(d.inputs()));
    let _ = writeln!(out, "outputs{}", list(d.outputs()));
    out
}

/// Phase label in π notation, e.g. `π/2`, `3π/2`, `0`.
pub fn phase_label(p: Phase) -> String {
    match (p.numer(), p.denom()) {
        (0, _) => "0".into(),
        (1, 1) => "π".into(),
        (1, d) => format!("π/{d}"),
        (n, 1) => format!("{n}π"),
        (n, d) => format!("{n}π/{d}"),
    }
}

pub fn to_dot(d: &Diagram) -> String {
    let mut out = String::from("graph zx {\n");
    for (v, k) in d.vertices() {
        let (label, attrs) = match k {
            VertexKind::Z(p) => (
                format!("Z:{}", phase_label(p)),
                "style=filled, fillcolor=\"#99dd99\"",
            ),
            VertexKind::X(p) => (
                format!("X:{}", phase_label(p)),
                "style=filled, fillcolor=\"#ff8888\"",
            ),
            VertexKind::H => (
                "H".to_string(),
                "shape=box, style=filled, fillcolor=\"#ffff66\"",
            ),
            VertexKind::Diamond => ("√2".to_string(), "shape=diamond"),
            VertexKind::Boundary => {
                let label = if let Some(i) = d.inputs().iter().position(|&x| x == v) {
                    format!("in {i}")
                } else if let Some(i) = d.outputs().iter().position(|&x| x == v) {
                    format!("out {i}")
                } else {
                    "B".to_string()
                };
                (label, "shape=plaintext")
            }
        };
        let _ = writeln!(out, "  {v} [label=\"{label}\", {attrs}];");
    }
    for (_, a, b) in d.edges() {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::isomorphic;

    #[test]
    fn parses_single_state() {
        let d = parse("node a Z 0\nnode b0 B\nedge a b0\noutputs b0").unwrap();
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.outputs().len(), 1);
        assert!(d.inputs().is_empty());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\nnode a X 1/2  # trailing\nnode b B\nedge a b\ninputs b\n";
        let d = parse(text).unwrap();
        assert_eq!(d.kind(d.inputs()[0]), Some(VertexKind::Boundary));
        assert!(d
            .vertices()
            .any(|(_, k)| k == VertexKind::X(Phase::new(1, 2))));
    }

    #[test]
    fn h_degree_three_names_vertex() {
        let text = "node h H\nnode a Z 0\nedge h a\nedge h a\nedge h a\n";
        match parse(text) {
            Err(ZxError::Invalid { vertex, .. }) => assert_eq!(vertex, "h"),
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn h_degree_one_names_vertex() {
        let text = "node hh H\nnode a Z 0\nedge hh a\n";
        match parse(text) {
            Err(ZxError::Invalid { vertex, .. }) => assert_eq!(vertex, "hh"),
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line() {
        for (text, line) in [
            ("node a Z\n", 1),
            ("node a Z 0\nedge a b\n", 2),
            ("\n\nfoo bar\n", 3),
            ("node a Z 1/0\n", 1),
            ("node a Z 0\nnode a X 0\n", 2),
        ] {
            match parse(text) {
                Err(ZxError::Syntax { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("expected syntax error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn empty_round_trip() {
        let text = serialize(&Diagram::new());
        assert_eq!(serialize(&parse(&text).unwrap()), text);
    }

    #[test]
    fn round_trip_with_loops() {
        let text = "node a Z 1/3\nnode b X 1\nnode i B\nnode o B\nedge a a\nedge a b\nedge a b\nedge i a\nedge b o\ninputs i\noutputs o\n";
        let d = parse(text).unwrap();
        let back = parse(&serialize(&d)).unwrap();
        assert!(isomorphic(&d, &back));
    }

    #[test]
    fn dot_labels() {
        let d = parse("node a Z 1/2\nnode b B\nnode c D\nedge a b\noutputs b").unwrap();
        let dot = to_dot(&d);
        assert!(dot.contains("Z:π/2"));
        assert!(dot.contains("out 0"));
        assert!(dot.contains("√2"));
        assert!(dot.contains("--"));
    }
}
