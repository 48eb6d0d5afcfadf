//! Verification reports shared by the protocol checks.

use std::fmt;

use crate::rewrite::Trace;
use crate::semantics::{format_sig, C};

#[derive(Clone, Debug, PartialEq)]
pub struct CaseVerdict {
    pub id: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// A Monte-Carlo estimate with its binomial standard error.
#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub name: String,
    pub successes: usize,
    pub trials: usize,
}

impl Estimate {
    pub fn value(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        let p = self.value();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// Whether `target` lies within `k` standard errors. A zero standard
    /// error (all or no successes) falls back to the error at `target`.
    pub fn within(&self, target: f64, k: f64) -> bool {
        let se = if self.std_error() > 0.0 {
            self.std_error()
        } else {
            (target * (1.0 - target) / self.trials.max(1) as f64).sqrt()
        };
        (self.value() - target).abs() <= k * se
    }
}

#[derive(Clone, Debug)]
pub struct ProtocolReport {
    pub protocol: String,
    pub seed: Option<u64>,
    pub cases: Vec<CaseVerdict>,
    /// Scalars `λ` recovered while comparing diagrams, by case id.
    pub scalars: Vec<(String, C)>,
    pub traces: Vec<(String, Trace)>,
    pub counts: Vec<(String, usize)>,
    /// Key bits shared by each pair, for key distribution runs.
    pub keys: Vec<(String, String)>,
    pub estimates: Vec<Estimate>,
}

impl ProtocolReport {
    pub fn new(protocol: impl Into<String>) -> ProtocolReport {
        ProtocolReport {
            protocol: protocol.into(),
            seed: None,
            cases: Vec::new(),
            scalars: Vec::new(),
            traces: Vec::new(),
            counts: Vec::new(),
            keys: Vec::new(),
            estimates: Vec::new(),
        }
    }

    pub fn case(
        &mut self,
        id: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
        pass: bool,
    ) {
        self.cases.push(CaseVerdict {
            id: id.into(),
            expected: expected.into(),
            actual: actual.into(),
            pass,
        });
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn pass_count(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    /// One `case id | expected | actual | pass` line per case.
    pub fn summary_lines(&self) -> Vec<String> {
        self.cases
            .iter()
            .map(|c| {
                format!(
                    "{} | {} | {} | {}",
                    c.id,
                    c.expected,
                    c.actual,
                    if c.pass { "pass" } else { "fail" }
                )
            })
            .collect()
    }
}

fn complex(z: C) -> String {
    format!("({},{})", format_sig(z.re), format_sig(z.im))
}

impl fmt::Display for ProtocolReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "protocol: {}", self.protocol)?;
        if let Some(seed) = self.seed {
            writeln!(f, "seed: {seed}")?;
        }
        for line in self.summary_lines() {
            writeln!(f, "{line}")?;
        }
        for (name, n) in &self.counts {
            writeln!(f, "count {name} = {n}")?;
        }
        for (pair, bits) in &self.keys {
            writeln!(f, "key {pair} = {bits}")?;
        }
        for e in &self.estimates {
            writeln!(
                f,
                "estimate {} = {} ± {} ({}/{})",
                e.name,
                format_sig(e.value()),
                format_sig(e.std_error()),
                e.successes,
                e.trials
            )?;
        }
        for (id, z) in &self.scalars {
            writeln!(f, "scalar {id} = {}", complex(*z))?;
        }
        for (id, t) in &self.traces {
            writeln!(f, "trace {id} ({} steps)", t.len())?;
        }
        writeln!(
            f,
            "result: {}/{} pass, {}",
            self.pass_count(),
            self.cases.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_verdict_needs_every_case() {
        let mut r = ProtocolReport::new("demo");
        r.case("a", "1", "1", true);
        assert!(r.passed());
        r.case("b", "1", "0", false);
        assert!(!r.passed());
        assert_eq!(r.summary_lines()[1], "b | 1 | 0 | fail");
        assert!(r.to_string().ends_with("result: 1/2 pass, FAIL\n"));
    }

    #[test]
    fn estimate_error() {
        let e = Estimate {
            name: "p".into(),
            successes: 25,
            trials: 100,
        };
        assert!((e.std_error() - (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-12);
        assert!(e.within(0.3, 3.0));
        assert!(!e.within(0.5, 3.0));
    }
}
