//! Finite algebras of Boolean similarity type given by explicit operation
//! tables, together with the relative structure of relativized Boolean
//! algebras: relative tops and bottoms, the meet order, local domains and the
//! projections between them.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{AxiomReport, Law};

/// Index of an element inside one [`Algebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i as u32)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An algebra `⟨A, ∧, ∨, ¬, 0, 1⟩` stored as total operation tables.
///
/// The value is immutable once built; every constructor validates that the
/// tables are total and in range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    size: usize,
    meet: Vec<ElementId>,
    join: Vec<ElementId>,
    neg: Vec<ElementId>,
    top: ElementId,
    bottom: ElementId,
    labels: Vec<String>,
}

impl Algebra {
    /// Builds an algebra from flat row-major tables (`meet[a * n + b]`).
    pub fn new(
        labels: Vec<String>,
        meet: Vec<usize>,
        join: Vec<usize>,
        neg: Vec<usize>,
        top: usize,
        bottom: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyAlgebra);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateName(l.clone()));
            }
        }
        let table = |name: &'static str, t: Vec<usize>, expected: usize| -> Result<Vec<ElementId>> {
            if t.len() != expected {
                return Err(Error::TableShape {
                    table: name,
                    got: t.len(),
                    expected,
                });
            }
            t.into_iter()
                .enumerate()
                .map(|(index, value)| {
                    if value < n {
                        Ok(ElementId::from(value))
                    } else {
                        Err(Error::TableOutOfRange {
                            table: name,
                            index,
                            value,
                            size: n,
                        })
                    }
                })
                .collect()
        };
        let meet = table("meet", meet, n * n)?;
        let join = table("join", join, n * n)?;
        let neg = table("neg", neg, n)?;
        let top = table("top", vec![top], 1)?[0];
        let bottom = table("bottom", vec![bottom], 1)?[0];
        Ok(Algebra {
            size: n,
            meet,
            join,
            neg,
            top,
            bottom,
            labels,
        })
    }

    /// Builds the tables by evaluating the operations on every index.
    pub fn from_fn(
        labels: Vec<String>,
        meet: impl Fn(usize, usize) -> usize,
        join: impl Fn(usize, usize) -> usize,
        neg: impl Fn(usize) -> usize,
        top: usize,
        bottom: usize,
    ) -> Result<Self> {
        let n = labels.len();
        let mut m = Vec::with_capacity(n * n);
        let mut j = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                m.push(meet(a, b));
                j.push(join(a, b));
            }
        }
        let ng = (0..n).map(neg).collect();
        Algebra::new(labels, m, j, ng, top, bottom)
    }

    /// The one-element algebra where `0 = 1`.
    pub fn trivial() -> Self {
        Algebra::new(vec!["1".into()], vec![0], vec![0], vec![0], 0, 0).expect("trivial algebra")
    }

    /// The powerset Boolean algebra over `atoms`; element `i` is the subset
    /// whose bit pattern is `i`. Labels are `0`, `1` and `a|b|...`.
    pub fn powerset(atoms: &[&str]) -> Self {
        let k = atoms.len();
        let n = 1usize << k;
        let full = n - 1;
        let labels = (0..n)
            .map(|s| {
                if s == 0 {
                    "0".to_string()
                } else if s == full {
                    "1".to_string()
                } else {
                    (0..k)
                        .filter(|i| s >> i & 1 == 1)
                        .map(|i| atoms[i])
                        .collect::<Vec<_>>()
                        .join("|")
                }
            })
            .collect();
        // With no atoms the single element is both 0 and 1.
        let labels = if k == 0 { vec!["1".to_string()] } else { labels };
        Algebra::from_fn(labels, |a, b| a & b, |a, b| a | b, |a| full & !a, full, 0)
            .expect("powerset tables are total")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.size as u32).map(ElementId)
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.meet[a.index() * self.size + b.index()]
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.join[a.index() * self.size + b.index()]
    }

    #[inline]
    pub fn neg(&self, a: ElementId) -> ElementId {
        self.neg[a.index()]
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    pub fn label(&self, a: ElementId) -> &str {
        &self.labels[a.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, name: &str) -> Option<ElementId> {
        self.labels.iter().position(|l| l == name).map(ElementId::from)
    }

    pub fn element(&self, name: &str) -> Result<ElementId> {
        self.find(name).ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn names(&self, xs: &[ElementId]) -> Vec<String> {
        xs.iter().map(|&x| self.label(x).to_string()).collect()
    }

    /// Copy of this algebra with a single meet entry replaced (both `a ∧ b`
    /// and nothing else; the table is no longer guaranteed commutative).
    pub fn with_meet_entry(&self, a: ElementId, b: ElementId, value: ElementId) -> Self {
        let mut out = self.clone();
        out.meet[a.index() * self.size + b.index()] = value;
        out
    }

    pub fn with_join_entry(&self, a: ElementId, b: ElementId, value: ElementId) -> Self {
        let mut out = self.clone();
        out.join[a.index() * self.size + b.index()] = value;
        out
    }

    pub fn with_neg_entry(&self, a: ElementId, value: ElementId) -> Self {
        let mut out = self.clone();
        out.neg[a.index()] = value;
        out
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::TableShape {
                table: "labels",
                got: labels.len(),
                expected: self.size,
            });
        }
        self.labels = labels;
        Ok(self)
    }

    /// `1_x = x ∨ ¬x`.
    #[inline]
    pub fn relative_top(&self, x: ElementId) -> ElementId {
        self.join(x, self.neg(x))
    }

    /// `0_x = x ∧ ¬x`.
    #[inline]
    pub fn relative_bottom(&self, x: ElementId) -> ElementId {
        self.meet(x, self.neg(x))
    }

    /// `x ≤ y` in the meet order, i.e. `x ∧ y = x`.
    #[inline]
    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.meet(x, y) == x
    }

    pub fn is_relative_top(&self, x: ElementId) -> bool {
        self.relative_top(x) == x
    }

    /// `π₁(x)`: every element sharing the relative top of `x`.
    pub fn domain_of(&self, x: ElementId) -> Vec<ElementId> {
        let t = self.relative_top(x);
        self.elements().filter(|&z| self.relative_top(z) == t).collect()
    }

    /// `π₂`: the set of relative tops, in index order. Fails if two relative
    /// tops meet outside the set.
    pub fn domain_lattice(&self) -> Result<Vec<ElementId>> {
        let tops: Vec<ElementId> = self
            .elements()
            .map(|x| self.relative_top(x))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for &a in &tops {
            for &b in &tops {
                let m = self.meet(a, b);
                if tops.binary_search(&m).is_err() {
                    return Err(Error::DomainLatticeNotClosed {
                        a: self.label(a).to_string(),
                        b: self.label(b).to_string(),
                    });
                }
            }
        }
        Ok(tops)
    }

    /// Principal upset `{y | x ≤ y}`.
    pub fn upset(&self, x: ElementId) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.size);
        for y in self.elements() {
            if self.leq(x, y) {
                s.insert(y.index());
            }
        }
        s
    }

    /// `h_x(y) = y ∧ 1_x`, defined when `1_y ≥ 1_x`.
    pub fn project(&self, x: ElementId, y: ElementId) -> Result<ElementId> {
        let tx = self.relative_top(x);
        if !self.leq(tx, self.relative_top(y)) {
            return Err(Error::ProjectionPrecondition {
                x: self.label(x).to_string(),
                y: self.label(y).to_string(),
            });
        }
        Ok(self.meet(y, tx))
    }

    /// Pairs `(x, y)` where `x ∧ y = x` and `x ∨ y = y` disagree.
    pub fn order_disagreements(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.leq(x, y) != (self.join(x, y) == y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Exhaustive check of rb1–rb5.
    pub fn check_rba(&self) -> AxiomReport {
        let mut r = AxiomReport::new();
        self.lattice_laws(Law::Rb1, &mut r);
        self.de_morgan(&mut r);
        let one = self.top;
        let zero = self.bottom;
        for x in self.elements() {
            let w = |r: &mut AxiomReport, law, rule| r.record(law, rule, self.names(&[x]));
            if self.meet(x, x) != x {
                w(&mut r, Law::Rb2, "x ∧ x = x");
            }
            if self.join(x, x) != x {
                w(&mut r, Law::Rb2, "x ∨ x = x");
            }
            if self.meet(x, one) != x {
                w(&mut r, Law::Rb2, "x ∧ 1 = x");
            }
            if self.neg(self.neg(x)) != x {
                w(&mut r, Law::Rb2, "¬¬x = x");
            }
            if self.join(x, one) != self.relative_top(x) {
                w(&mut r, Law::Rb3, "x ∨ 1 = 1_x");
            }
            if self.meet(x, zero) != zero {
                w(&mut r, Law::Rb4, "x ∧ 0 = 0");
            }
        }
        for x in self.elements() {
            let tx = self.relative_top(x);
            for y in self.elements() {
                if self.leq(tx, self.relative_top(y))
                    && self.neg(self.meet(y, tx)) != self.meet(self.neg(y), tx)
                {
                    r.record(Law::Rb5, "1_y ≥ 1_x ⇒ ¬(y ∧ 1_x) = ¬y ∧ 1_x", self.names(&[x, y]));
                }
            }
        }
        r
    }

    /// Exhaustive check of ba1–ba4.
    pub fn check_boolean(&self) -> AxiomReport {
        let mut r = AxiomReport::new();
        self.lattice_laws(Law::Ba1, &mut r);
        for x in self.elements() {
            let nx = self.neg(x);
            if self.join(x, nx) != self.top {
                r.record(Law::Ba2, "x ∨ ¬x = 1", self.names(&[x]));
            }
            if self.meet(x, nx) != self.bottom {
                r.record(Law::Ba3, "x ∧ ¬x = 0", self.names(&[x]));
            }
            if self.join(x, self.bottom) != x {
                r.record(Law::Ba4, "x ∨ 0 = x", self.names(&[x]));
            }
            if self.meet(x, self.top) != x {
                r.record(Law::Ba4, "x ∧ 1 = x", self.names(&[x]));
            }
        }
        r
    }

    fn lattice_laws(&self, law: Law, r: &mut AxiomReport) {
        for x in self.elements() {
            for y in self.elements() {
                if self.meet(x, y) != self.meet(y, x) {
                    r.record(law, "meet commutativity", self.names(&[x, y]));
                }
                if self.join(x, y) != self.join(y, x) {
                    r.record(law, "join commutativity", self.names(&[x, y]));
                }
                let xy_m = self.meet(x, y);
                let xy_j = self.join(x, y);
                for z in self.elements() {
                    if self.meet(xy_m, z) != self.meet(x, self.meet(y, z)) {
                        r.record(law, "meet associativity", self.names(&[x, y, z]));
                    }
                    if self.join(xy_j, z) != self.join(x, self.join(y, z)) {
                        r.record(law, "join associativity", self.names(&[x, y, z]));
                    }
                    if self.meet(x, self.join(y, z))
                        != self.join(xy_m, self.meet(x, z))
                    {
                        r.record(law, "meet distributes over join", self.names(&[x, y, z]));
                    }
                    if self.join(x, self.meet(y, z))
                        != self.meet(xy_j, self.join(x, z))
                    {
                        r.record(law, "join distributes over meet", self.names(&[x, y, z]));
                    }
                }
            }
        }
    }

    fn de_morgan(&self, r: &mut AxiomReport) {
        for x in self.elements() {
            for y in self.elements() {
                if self.neg(self.meet(x, y)) != self.join(self.neg(x), self.neg(y)) {
                    r.record(Law::Rb1, "¬(x ∧ y) = ¬x ∨ ¬y", self.names(&[x, y]));
                }
                if self.neg(self.join(x, y)) != self.meet(self.neg(x), self.neg(y)) {
                    r.record(Law::Rb1, "¬(x ∨ y) = ¬x ∧ ¬y", self.names(&[x, y]));
                }
            }
        }
    }

    /// The sub-table on `π₁(x)` with `1_x` and `0_x` as its constants.
    ///
    /// Fails when the domain is not closed under the operations or the
    /// sub-table is not a Boolean algebra, which only happens for inputs that
    /// are not relativized Boolean algebras.
    pub fn extract_local_boolean(&self, x: ElementId) -> Result<LocalAlgebra> {
        let members = self.domain_of(x);
        let pos = |e: ElementId| members.binary_search(&e);
        let fail = |msg: String| Error::NotBoolean {
            element: self.label(x).to_string(),
            report: msg,
        };
        let k = members.len();
        let mut meet = Vec::with_capacity(k * k);
        let mut join = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                let m = self.meet(a, b);
                let j = self.join(a, b);
                meet.push(pos(m).map_err(|_| {
                    fail(format!("{} ∧ {} leaves the domain", self.label(a), self.label(b)))
                })?);
                join.push(pos(j).map_err(|_| {
                    fail(format!("{} ∨ {} leaves the domain", self.label(a), self.label(b)))
                })?);
            }
        }
        let neg = members
            .iter()
            .map(|&a| pos(self.neg(a)).map_err(|_| fail(format!("¬{} leaves the domain", self.label(a)))))
            .collect::<Result<Vec<_>>>()?;
        let top = pos(self.relative_top(x)).map_err(|_| fail("1_x not in domain".into()))?;
        let bottom = pos(self.relative_bottom(x)).map_err(|_| fail("0_x not in domain".into()))?;
        let algebra = Algebra::new(self.names(&members), meet, join, neg, top, bottom)?;
        let report = algebra.check_boolean();
        if !report.passed() {
            return Err(fail(report.to_string()));
        }
        Ok(LocalAlgebra { algebra, members })
    }
}

/// A local Boolean algebra `π₁(x)`; local index `i` stands for `members[i]`.
#[derive(Debug, Clone)]
pub struct LocalAlgebra {
    pub algebra: Algebra,
    pub members: Vec<ElementId>,
}

impl LocalAlgebra {
    pub fn global(&self, local: ElementId) -> ElementId {
        self.members[local.index()]
    }

    pub fn local(&self, global: ElementId) -> Option<ElementId> {
        self.members.binary_search(&global).ok().map(ElementId::from)
    }
}

/// Searches for an isomorphism `a → b` (respecting ∧, ∨, ¬, 0, 1).
///
/// Labels are used only to order candidates; a label match is never taken as
/// evidence on its own.
pub fn find_isomorphism(a: &Algebra, b: &Algebra) -> Option<Vec<ElementId>> {
    if a.size() != b.size() {
        return None;
    }
    let sig = |g: &Algebra, x: ElementId| {
        let up = g.elements().filter(|&y| g.leq(x, y)).count();
        let down = g.elements().filter(|&y| g.leq(y, x)).count();
        (g.domain_of(x).len(), up, down, g.is_relative_top(x), x == g.top(), x == g.bottom())
    };
    let sa: Vec<_> = a.elements().map(|x| sig(a, x)).collect();
    let sb: Vec<_> = b.elements().map(|x| sig(b, x)).collect();
    let mut order: Vec<ElementId> = a.elements().collect();
    // Most constrained first.
    order.sort_by_key(|x| sb.iter().filter(|s| **s == sa[x.index()]).count());
    let mut map: Vec<Option<ElementId>> = vec![None; a.size()];
    let mut used = vec![false; b.size()];

    fn consistent(a: &Algebra, b: &Algebra, map: &[Option<ElementId>], x: ElementId) -> bool {
        let fx = map[x.index()].unwrap();
        let img = |e: ElementId| map[e.index()];
        if let Some(n) = img(a.neg(x)) {
            if n != b.neg(fx) {
                return false;
            }
        }
        for y in a.elements() {
            let Some(fy) = img(y) else { continue };
            for (ab, bb) in [(a.meet(x, y), b.meet(fx, fy)), (a.meet(y, x), b.meet(fy, fx))] {
                if img(ab).is_some_and(|v| v != bb) {
                    return false;
                }
            }
            for (ab, bb) in [(a.join(x, y), b.join(fx, fy)), (a.join(y, x), b.join(fy, fx))] {
                if img(ab).is_some_and(|v| v != bb) {
                    return false;
                }
            }
        }
        // Entries whose arguments are mapped but whose result was mapped
        // earlier are covered above; check results that equal x itself.
        for y in a.elements() {
            let Some(fy) = img(y) else { continue };
            for z in a.elements() {
                let Some(fz) = img(z) else { continue };
                if a.meet(y, z) == x && b.meet(fy, fz) != fx {
                    return false;
                }
                if a.join(y, z) == x && b.join(fy, fz) != fx {
                    return false;
                }
            }
            if a.neg(y) == x && b.neg(fy) != fx {
                return false;
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        a: &Algebra,
        b: &Algebra,
        order: &[ElementId],
        sa: &[(usize, usize, usize, bool, bool, bool)],
        sb: &[(usize, usize, usize, bool, bool, bool)],
        depth: usize,
        map: &mut Vec<Option<ElementId>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(&x) = order.get(depth) else { return true };
        let mut cands: Vec<ElementId> = b
            .elements()
            .filter(|y| !used[y.index()] && sb[y.index()] == sa[x.index()])
            .collect();
        cands.sort_by_key(|&y| a.label(x) != b.label(y));
        for y in cands {
            map[x.index()] = Some(y);
            used[y.index()] = true;
            if consistent(a, b, map, x) && search(a, b, order, sa, sb, depth + 1, map, used) {
                return true;
            }
            map[x.index()] = None;
            used[y.index()] = false;
        }
        false
    }

    if search(a, b, &order, &sa, &sb, 0, &mut map, &mut used) {
        Some(map.into_iter().map(|m| m.unwrap()).collect())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ba4() -> Algebra {
        Algebra::powerset(&["a", "b"])
    }

    #[test]
    fn powerset_is_boolean_and_rba() {
        let b = ba4();
        assert!(b.check_boolean().passed());
        assert!(b.check_rba().passed());
        assert_eq!(b.domain_lattice().unwrap(), vec![b.top()]);
        assert_eq!(b.domain_of(b.top()).len(), 4);
    }

    #[test]
    fn trivial_algebra_is_accepted() {
        let t = Algebra::trivial();
        assert!(t.check_rba().passed());
        assert!(t.check_boolean().passed());
        assert_eq!(t.top(), t.bottom());
    }

    #[test]
    fn bounds_in_meet_order() {
        let b = ba4();
        for x in b.elements() {
            assert!(b.leq(b.bottom(), x));
            assert!(b.leq(x, b.top()));
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let err = Algebra::new(vec!["a".into()], vec![0], vec![0], vec![1], 0, 0).unwrap_err();
        assert!(matches!(err, Error::TableOutOfRange { table: "neg", .. }));
        let err = Algebra::new(vec!["a".into(), "b".into()], vec![0], vec![0; 4], vec![0, 1], 0, 0)
            .unwrap_err();
        assert!(matches!(err, Error::TableShape { table: "meet", .. }));
        let err = Algebra::new(vec!["a".into(), "a".into()], vec![0; 4], vec![0; 4], vec![0, 1], 0, 0)
            .unwrap_err();
        assert!(matches!(err, Error::DuplicateName(_)));
    }

    #[test]
    fn mutation_breaks_commutativity() {
        let b = ba4();
        let a = b.find("a").unwrap();
        let m = b.with_meet_entry(a, b.top(), b.bottom());
        let r = m.check_rba();
        assert!(r.violates(Law::Rb1));
        assert!(r.violations.iter().any(|v| v.rule == "meet commutativity"));
    }

    #[test]
    fn project_rejects_coarser_target() {
        // In a BA every relative top is 1, so the precondition always holds.
        let b = ba4();
        for x in b.elements() {
            for y in b.elements() {
                assert_eq!(b.project(x, y).unwrap(), y);
            }
        }
    }

    #[test]
    fn isomorphism_of_relabelled_powerset() {
        let b = ba4();
        let c = Algebra::powerset(&["b", "a"]);
        let iso = find_isomorphism(&b, &c).expect("isomorphic");
        assert_eq!(iso[b.top().index()], c.top());
        assert!(find_isomorphism(&b, &Algebra::powerset(&["a"])).is_none());
    }
}
