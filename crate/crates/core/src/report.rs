use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: String,
}

/// Outcome of an axiom or relation suite; empty `violations` means everything held.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub suite: String,
    pub mode: String,
    pub checked: u64,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
    /// violations beyond the per-axiom witness cap
    pub suppressed: u64,
}

const WITNESS_CAP: usize = 16;

impl AxiomReport {
    pub fn new(suite: &str, mode: impl Into<String>) -> Self {
        AxiomReport { suite: suite.to_string(), mode: mode.into(), ..Default::default() }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&mut self, ok: bool, axiom: &str, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.push(axiom, witness);
        }
    }

    pub fn fail(&mut self, axiom: &str, witness: impl Into<String>) {
        self.checked += 1;
        self.push(axiom, || witness.into());
    }

    fn push(&mut self, axiom: &str, witness: impl FnOnce() -> String) {
        if self.violations.iter().filter(|v| v.axiom == axiom).count() >= WITNESS_CAP {
            self.suppressed += 1;
        } else {
            self.violations.push(Violation { axiom: axiom.to_string(), witness: witness() });
        }
    }

    pub fn violated_axioms(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.axiom.as_str()) {
                out.push(&v.axiom);
            }
        }
        out
    }

    pub fn names_axiom(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}
