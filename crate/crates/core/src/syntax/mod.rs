//! Formulas of the propositional language and its extension by the awareness
//! and knowledge modalities `A` and `K`.
//!
//! Only `p | 1 | ¬φ | φ ∧ ψ | Aφ | Kφ` are primitive. `0`, `∨`, `→` and `↔`
//! are expanded when a formula is built, so two formulas are equal exactly
//! when their expanded trees are.

mod classical;
mod enumerate;
mod parse;
mod print;
mod schema;
mod semantics;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use classical::{classical_tautology, ClassicalSemantics};
pub use enumerate::{
    class_closure, count_formulas, enumerate_formulas, explicit_keys, saturate, Class, ClosureOptions,
};
pub use parse::{parse, parse_formula_file, ParseError};
pub use schema::{agp_instances, instantiate, nec_ak, AxiomSchema, SchemaId, Template, METAVAR_PHI, METAVAR_PSI};
pub use semantics::{eval, Bound, Lanes, Pair, Semantics};

/// A propositional variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prop(Arc<str>);

impl Prop {
    pub fn new(name: &str) -> Self {
        Prop(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// Schema metavariables are written with a leading `$`.
    pub fn is_metavar(&self) -> bool {
        self.0.starts_with('$')
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Prop {
    fn from(s: &str) -> Self {
        Prop::new(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Prop(Prop),
    Top,
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Aware(Box<Formula>),
    Know(Box<Formula>),
}

impl Formula {
    pub fn prop(name: &str) -> Self {
        Formula::Prop(Prop::new(name))
    }

    pub fn top() -> Self {
        Formula::Top
    }

    /// `0 = ¬1`
    pub fn bottom() -> Self {
        Formula::neg(Formula::Top)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    /// `φ ∨ ψ = ¬(¬φ ∧ ¬ψ)`
    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::neg(Formula::and(Formula::neg(a), Formula::neg(b)))
    }

    /// `φ → ψ = ¬φ ∨ ψ`
    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::or(Formula::neg(a), b)
    }

    /// `φ ↔ ψ = (φ → ψ) ∧ (ψ → φ)`
    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    pub fn aware(f: Formula) -> Self {
        Formula::Aware(Box::new(f))
    }

    pub fn know(f: Formula) -> Self {
        Formula::Know(Box::new(f))
    }

    /// Number of primitive connectives (`¬`, `∧`, `A`, `K`).
    pub fn size(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::Top => 0,
            Formula::Neg(a) | Formula::Aware(a) | Formula::Know(a) => 1 + a.size(),
            Formula::And(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::Top => 0,
            Formula::Neg(a) => a.modal_depth(),
            Formula::Aware(a) | Formula::Know(a) => 1 + a.modal_depth(),
            Formula::And(a, b) => a.modal_depth().max(b.modal_depth()),
        }
    }

    pub fn is_modal_free(&self) -> bool {
        self.modal_depth() == 0
    }

    /// Replaces every occurrence of a bound proposition.
    pub fn substitute(&self, bind: &impl Fn(&Prop) -> Option<Formula>) -> Formula {
        match self {
            Formula::Prop(p) => bind(p).unwrap_or_else(|| self.clone()),
            Formula::Top => Formula::Top,
            Formula::Neg(a) => Formula::neg(a.substitute(bind)),
            Formula::And(a, b) => Formula::and(a.substitute(bind), b.substitute(bind)),
            Formula::Aware(a) => Formula::aware(a.substitute(bind)),
            Formula::Know(a) => Formula::know(a.substitute(bind)),
        }
    }

    fn collect_props<'a>(&'a self, out: &mut BTreeSet<&'a Prop>) {
        match self {
            Formula::Prop(p) => {
                out.insert(p);
            }
            Formula::Top => {}
            Formula::Neg(a) | Formula::Aware(a) | Formula::Know(a) => a.collect_props(out),
            Formula::And(a, b) => {
                a.collect_props(out);
                b.collect_props(out);
            }
        }
    }
}

/// `P(φ)`: the propositions occurring in `φ`.
pub fn props_of(f: &Formula) -> BTreeSet<Prop> {
    let mut out = BTreeSet::new();
    f.collect_props(&mut out);
    out.into_iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abbreviations_expand_syntactically() {
        let (p, q) = (Formula::prop("p"), Formula::prop("q"));
        assert_eq!(Formula::bottom(), Formula::neg(Formula::Top));
        assert_eq!(
            Formula::or(p.clone(), q.clone()),
            Formula::neg(Formula::and(Formula::neg(p.clone()), Formula::neg(q.clone())))
        );
        assert_eq!(
            Formula::implies(p.clone(), q.clone()),
            Formula::or(Formula::neg(p.clone()), q.clone())
        );
    }

    #[test]
    fn props_examples() {
        let f = parse("p & q").unwrap();
        assert_eq!(props_of(&f), [Prop::new("p"), Prop::new("q")].into());
        assert!(props_of(&Formula::Top).is_empty());
        assert_eq!(props_of(&parse("A (K p)").unwrap()), [Prop::new("p")].into());
    }

    #[test]
    fn size_and_depth() {
        let f = parse("K (p & A q)").unwrap();
        assert_eq!(f.size(), 3);
        assert_eq!(f.modal_depth(), 2);
        assert_eq!(parse("p | q").unwrap().size(), 4);
    }
}
