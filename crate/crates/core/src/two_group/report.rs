use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Axiom family a violation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomClass {
    Shape,
    Category,
    Tensor,
    Unit,
    Inversion,
    Associator,
    Pentagon,
    CrossedModule,
    Cocycle,
    Functor,
    Naturality,
    Coherence,
    Extension,
    Action,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub class: AxiomClass,
    pub rule: String,
    pub witness: Vec<usize>,
}

/// Witnesses kept per rule; the total count is always recorded.
const WITNESS_CAP: usize = 64;

/// Outcome of an exhaustive verification sweep. Notes record conditions
/// that are reported but not required.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub violations: Vec<Violation>,
    pub notes: Vec<Violation>,
    /// Total number of failures per rule, including witnesses beyond the cap.
    pub counts: BTreeMap<String, usize>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fail(&mut self, class: AxiomClass, rule: &str, witness: Vec<usize>) {
        let count = self.counts.entry(rule.to_string()).or_insert(0);
        *count += 1;
        if *count <= WITNESS_CAP {
            self.violations.push(Violation {
                class,
                rule: rule.to_string(),
                witness,
            });
        }
    }

    pub fn note(&mut self, class: AxiomClass, rule: &str, witness: Vec<usize>) {
        if self.notes.iter().filter(|n| n.rule == rule).count() < WITNESS_CAP {
            self.notes.push(Violation {
                class,
                rule: rule.to_string(),
                witness,
            });
        }
    }

    pub fn check(&mut self, ok: bool, class: AxiomClass, rule: &str, witness: impl FnOnce() -> Vec<usize>) {
        if !ok {
            self.fail(class, rule, witness());
        }
    }

    pub fn merge(&mut self, other: Report) {
        for v in other.violations {
            self.violations.push(v);
        }
        for (k, c) in other.counts {
            *self.counts.entry(k).or_insert(0) += c;
        }
        self.notes.extend(other.notes);
    }

    /// Sorts and deduplicates; reports are deterministic after this.
    pub fn finish(mut self) -> Self {
        self.violations.sort();
        self.violations.dedup();
        self.notes.sort();
        self.notes.dedup();
        self
    }

    pub fn has_class(&self, class: AxiomClass) -> bool {
        self.violations.iter().any(|v| v.class == class)
    }

    pub fn first(&self, class: AxiomClass) -> Option<&Violation> {
        self.violations.iter().find(|v| v.class == class)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "no violations");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .take(5)
            .map(|v| format!("{:?}: {} at {:?}", v.class, v.rule, v.witness))
            .collect();
        write!(f, "{}", parts.join("; "))?;
        if self.violations.len() > 5 {
            write!(f, "; ... ({} more)", self.violations.len() - 5)?;
        }
        Ok(())
    }
}
