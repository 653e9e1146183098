//! Modal RBAs: an RBA with a knowledge operator `f^K`, the awareness operator
//! `f^A(x) = f^K(1_x)`, and algebraic validity of formulas under assignments.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Algebra, ElementId};
use crate::error::{Error, Result};
use crate::report::{AxiomReport, Law};
use crate::syntax::{eval, props_of, Formula, Lanes, Prop, Semantics};

/// Default bound on `|P(φ)|` for sweeps over all assignments.
pub const DEFAULT_SWEEP_PROPS: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mrba {
    pub algebra: Algebra,
    fk: Vec<ElementId>,
}

impl Mrba {
    /// Checks only the table shape; see [`Mrba::check`] for the laws.
    pub fn new(algebra: Algebra, fk: Vec<ElementId>) -> Result<Self> {
        let n = algebra.size();
        if fk.len() != n {
            return Err(Error::TableShape { table: "fk", got: fk.len(), expected: n });
        }
        if let Some((i, v)) = fk.iter().enumerate().find(|(_, v)| v.index() >= n) {
            return Err(Error::TableOutOfRange { table: "fk", index: i, value: v.index(), size: n });
        }
        Ok(Mrba { algebra, fk })
    }

    pub fn identity(algebra: Algebra) -> Self {
        let fk = algebra.elements().collect();
        Mrba { algebra, fk }
    }

    pub fn fk(&self, x: ElementId) -> ElementId {
        self.fk[x.index()]
    }

    pub fn fk_table(&self) -> &[ElementId] {
        &self.fk
    }

    /// `f^A(x) = f^K(1_x)`
    pub fn fa(&self, x: ElementId) -> ElementId {
        self.fk(self.algebra.relative_top(x))
    }

    pub fn with_fk_entry(&self, x: ElementId, value: ElementId) -> Self {
        let mut out = self.clone();
        out.fk[x.index()] = value;
        out
    }

    /// f1, f2, f3 and, when `require_fd`, fD. The algebra laws are included.
    pub fn check(&self, require_fd: bool) -> AxiomReport {
        let a = &self.algebra;
        let mut r = a.check_rba();
        let name = |x: ElementId| a.label(x).to_string();
        for x in a.elements() {
            let k = self.fk(x);
            if a.relative_top(k) != a.relative_top(x) {
                r.record(Law::F1, "1_{fK(x)} = 1_x", vec![name(x), name(k)]);
            }
            if require_fd {
                let z = a.relative_bottom(x);
                if self.fk(z) != z {
                    r.record(Law::FD, "fK(0_x) = 0_x", vec![name(x), name(self.fk(z))]);
                }
            }
            for y in a.elements() {
                let lhs = self.fk(a.meet(x, y));
                let rhs = a.meet(k, self.fk(y));
                if lhs != rhs {
                    r.record(Law::F3, "fK(x ∧ y) = fK(x) ∧ fK(y)", vec![name(x), name(y), name(lhs), name(rhs)]);
                }
            }
        }
        if self.fk(a.top()) != a.top() {
            r.record(Law::F2, "fK(1) = 1", vec![name(self.fk(a.top()))]);
        }
        r
    }
}

/// `check(true)`: fD is part of the definition.
pub fn check_mrba(m: &Mrba) -> AxiomReport {
    m.check(true)
}

/// A homomorphism from the propositional language, given on propositions.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(pub BTreeMap<Prop, ElementId>);

impl Assignment {
    pub fn get(&self, p: &Prop) -> Option<ElementId> {
        self.0.get(p).copied()
    }

    pub fn insert(&mut self, p: Prop, x: ElementId) {
        self.0.insert(p, x);
    }

    /// Parses `p=X_B, q=X_R`.
    pub fn parse(alg: &Algebra, text: &str) -> Result<Self> {
        let mut out = Assignment::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (p, x) = item
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("assignment item `{item}` is not of the form p=element")))?;
            let p = p.trim();
            if p.is_empty() {
                return Err(Error::Input(format!("assignment item `{item}` has no proposition")));
            }
            if out.0.insert(Prop::new(p), alg.element(x.trim())?).is_some() {
                return Err(Error::DuplicateName(p.to_string()));
            }
        }
        Ok(out)
    }

    pub fn display<'a>(&'a self, alg: &'a Algebra) -> impl fmt::Display + 'a {
        struct Show<'a>(&'a Assignment, &'a Algebra);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, (p, x)) in self.0 .0.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}={}", self.1.label(*x))?;
                }
                Ok(())
            }
        }
        Show(self, alg)
    }
}

/// `h⁺` as a [`Semantics`].
#[derive(Debug, Clone, Copy)]
pub struct MrbaSemantics<'a> {
    pub mrba: &'a Mrba,
    pub assignment: &'a Assignment,
}

impl Semantics for MrbaSemantics<'_> {
    type Value = ElementId;

    fn prop(&self, p: &Prop) -> Option<ElementId> {
        self.assignment.get(p)
    }
    fn top(&self) -> ElementId {
        self.mrba.algebra.top()
    }
    fn neg(&self, a: &ElementId) -> ElementId {
        self.mrba.algebra.neg(*a)
    }
    fn and(&self, a: &ElementId, b: &ElementId) -> ElementId {
        self.mrba.algebra.meet(*a, *b)
    }
    fn aware(&self, a: &ElementId) -> ElementId {
        self.mrba.fa(*a)
    }
    fn know(&self, a: &ElementId) -> ElementId {
        self.mrba.fk(*a)
    }
}

/// `h⁺(φ)`
pub fn evaluate(m: &Mrba, h: &Assignment, f: &Formula) -> Result<ElementId> {
    eval(&MrbaSemantics { mrba: m, assignment: h }, f)
}

/// `h⁺(φ) = 1_{h⁺(φ)}`
pub fn algebra_valid(m: &Mrba, h: &Assignment, f: &Formula) -> Result<bool> {
    let x = evaluate(m, h, f)?;
    Ok(m.algebra.is_relative_top(x))
}

/// Every assignment of `props` into the algebra, in lexicographic order.
pub fn all_assignments(alg: &Algebra, props: &[Prop]) -> Vec<Assignment> {
    let n = alg.size();
    let total = n.pow(props.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut h = Assignment::default();
            for p in props.iter().rev() {
                h.insert(p.clone(), ElementId((code % n) as u32));
                code /= n;
            }
            h
        })
        .collect()
}

fn sweep_props(f: &Formula, limit: usize) -> Result<Vec<Prop>> {
    let props: Vec<Prop> = props_of(f).into_iter().collect();
    if props.len() > limit {
        return Err(Error::TooManyProps { count: props.len(), limit });
    }
    Ok(props)
}

/// The first assignment (in [`all_assignments`] order) under which `φ` is
/// not valid, if any. `limit` bounds `|P(φ)|`.
pub fn find_invalidating(m: &Mrba, f: &Formula, limit: usize) -> Result<Option<Assignment>> {
    let props = sweep_props(f, limit)?;
    for h in all_assignments(&m.algebra, &props) {
        if !algebra_valid(m, &h, f)? {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Validity under every assignment, with the default bound on `|P(φ)|`.
pub fn valid_all_assignments(m: &Mrba, f: &Formula) -> Result<bool> {
    valid_all_assignments_with_limit(m, f, DEFAULT_SWEEP_PROPS)
}

pub fn valid_all_assignments_with_limit(m: &Mrba, f: &Formula, limit: usize) -> Result<bool> {
    Ok(find_invalidating(m, f, limit)?.is_none())
}

/// One lane per assignment of `props`: evaluating once gives `h⁺(φ)` under
/// every assignment.
pub struct AssignmentLanes<'a> {
    pub mrba: &'a Mrba,
    pub assignments: Vec<Assignment>,
}

impl<'a> AssignmentLanes<'a> {
    pub fn new(mrba: &'a Mrba, props: &[Prop]) -> Self {
        AssignmentLanes { mrba, assignments: all_assignments(&mrba.algebra, props) }
    }

    pub fn semantics(&self) -> Lanes<MrbaSemantics<'_>> {
        Lanes(self.assignments.iter().map(|h| MrbaSemantics { mrba: self.mrba, assignment: h }).collect())
    }

    /// Index of the first lane whose value is not a relative top.
    pub fn first_invalid(&self, values: &[ElementId]) -> Option<usize> {
        values.iter().position(|&x| !self.mrba.algebra.is_relative_top(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn ba4_identity() -> Mrba {
        Mrba::identity(Algebra::powerset(&["a", "b"]))
    }

    #[test]
    fn identity_passes() {
        assert!(check_mrba(&ba4_identity()).passed());
    }

    #[test]
    fn broken_operator_violates() {
        let m = ba4_identity();
        let a = &m.algebra;
        let bad = m.with_fk_entry(a.top(), a.bottom());
        let r = check_mrba(&bad);
        assert!(r.violates(Law::F2));
        assert!(r.violates(Law::F3));
        let no_d = m.with_fk_entry(a.bottom(), a.top());
        assert!(check_mrba(&no_d).violates(Law::FD));
        assert!(!no_d.check(false).violates(Law::FD));
    }

    #[test]
    fn evaluation_and_validity() {
        let m = ba4_identity();
        let a = m.algebra.find("a").unwrap();
        let h = Assignment::parse(&m.algebra, "p=a").unwrap();
        assert_eq!(evaluate(&m, &h, &parse("K p").unwrap()).unwrap(), a);
        assert!(algebra_valid(&m, &h, &parse("p | ~p").unwrap()).unwrap());
        assert!(!algebra_valid(&m, &h, &parse("p").unwrap()).unwrap());
        assert!(valid_all_assignments(&m, &parse("~K 0").unwrap()).unwrap());
        assert!(!valid_all_assignments(&m, &parse("p -> q").unwrap()).unwrap());
        assert!(matches!(
            valid_all_assignments(&m, &parse("p & q & r").unwrap()),
            Err(Error::TooManyProps { count: 3, limit: 2 })
        ));
        assert!(matches!(evaluate(&m, &h, &parse("q").unwrap()), Err(Error::UnboundProp(_))));
    }

    #[test]
    fn assignment_parsing() {
        let alg = Algebra::powerset(&["a", "b"]);
        assert!(Assignment::parse(&alg, "p=nope").is_err());
        assert!(Assignment::parse(&alg, "p").is_err());
        assert!(Assignment::parse(&alg, "p=a,p=b").is_err());
        let h = Assignment::parse(&alg, " p = a , q=b ").unwrap();
        assert_eq!(h.display(&alg).to_string(), "p=a,q=b");
    }

    #[test]
    fn lanes_agree_with_sweep() {
        let m = ba4_identity();
        let props = [Prop::new("p"), Prop::new("q")];
        let lanes = AssignmentLanes::new(&m, &props);
        assert_eq!(lanes.assignments.len(), 16);
        let f = parse("K p -> A q").unwrap();
        let values = eval(&lanes.semantics(), &f).unwrap();
        for (h, v) in lanes.assignments.iter().zip(&values) {
            assert_eq!(evaluate(&m, h, &f).unwrap(), *v);
        }
    }
}
