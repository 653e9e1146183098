//! Violation reports shared by the algebra, modal-algebra and frame checkers.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// The law a violation was found against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Law {
    Rb1,
    Rb2,
    Rb3,
    Rb4,
    Rb5,
    Ba1,
    Ba2,
    Ba3,
    Ba4,
    F1,
    F2,
    F3,
    FD,
    /// Model condition (i): each language set is upward closed.
    LangUpward,
    /// Model condition (ii): V(p) is a subset of L(p).
    ValInLang,
    Serial,
    PreorderReflexive,
    PreorderTransitive,
}

impl Law {
    pub fn id(self) -> &'static str {
        match self {
            Law::Rb1 => "rb1",
            Law::Rb2 => "rb2",
            Law::Rb3 => "rb3",
            Law::Rb4 => "rb4",
            Law::Rb5 => "rb5",
            Law::Ba1 => "ba1",
            Law::Ba2 => "ba2",
            Law::Ba3 => "ba3",
            Law::Ba4 => "ba4",
            Law::F1 => "f1",
            Law::F2 => "f2",
            Law::F3 => "f3",
            Law::FD => "fD",
            Law::LangUpward => "(i)",
            Law::ValInLang => "(ii)",
            Law::Serial => "serial",
            Law::PreorderReflexive => "preorder-reflexive",
            Law::PreorderTransitive => "preorder-transitive",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    /// Which instance of the law, e.g. "meet associativity".
    pub rule: &'static str,
    /// Names of the elements (or worlds, propositions) witnessing the failure.
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}): [{}]", self.law, self.rule, self.witness.join(", "))
    }
}

/// Outcome of an exhaustive law check.
///
/// At most [`AxiomReport::KEPT_PER_RULE`] witnesses are kept per rule; `counts`
/// holds the exact number of failing instances per law.
#[derive(Debug, Clone, Default, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    pub counts: BTreeMap<Law, usize>,
    #[serde(skip)]
    kept: BTreeMap<&'static str, usize>,
}

impl AxiomReport {
    pub const KEPT_PER_RULE: usize = 4;

    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn record(&mut self, law: Law, rule: &'static str, witness: Vec<String>) {
        *self.counts.entry(law).or_default() += 1;
        let kept = self.kept.entry(rule).or_default();
        if *kept < Self::KEPT_PER_RULE {
            *kept += 1;
            self.violations.push(Violation { law, rule, witness });
        }
    }

    pub fn violates(&self, law: Law) -> bool {
        self.counts.contains_key(&law)
    }

    pub fn merge(&mut self, other: AxiomReport) {
        for v in other.violations {
            let kept = self.kept.entry(v.rule).or_default();
            if *kept < Self::KEPT_PER_RULE {
                *kept += 1;
                self.violations.push(v);
            }
        }
        for (law, n) in other.counts {
            *self.counts.entry(law).or_default() += n;
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "passed");
        }
        let total: usize = self.counts.values().sum();
        writeln!(f, "failed: {total} violating instance(s)")?;
        for (law, n) in &self.counts {
            writeln!(f, "  {law}: {n}")?;
        }
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}
