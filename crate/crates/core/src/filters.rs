//! Filters, strongly proper filters, ultrafilters and the family `F^RB` of
//! filters that are local ultrafilters on every domain they touch. Also the
//! finite filter extension and the Stone-style embedding into a concrete RBA.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::algebra::{Algebra, ElementId};
use crate::concrete::{c_join, c_meet, c_neg, PointSet, SubsetPair, MAX_POINTS};
use crate::error::{Error, Result};

/// Default cap on subsets visited by [`enumerate_filters_brute`].
pub const DEFAULT_CANDIDATE_CAP: usize = 1 << 20;

/// A set of elements of one algebra.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filter {
    members: FixedBitSet,
}

impl Filter {
    pub fn from_bits(members: FixedBitSet) -> Self {
        Filter { members }
    }

    pub fn from_elements(alg: &Algebra, xs: impl IntoIterator<Item = ElementId>) -> Self {
        let mut members = FixedBitSet::with_capacity(alg.size());
        for x in xs {
            members.insert(x.index());
        }
        Filter { members }
    }

    /// The principal filter `↑x`.
    pub fn principal(alg: &Algebra, x: ElementId) -> Self {
        Filter { members: alg.upset(x) }
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.contains(x.index())
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members.ones().map(ElementId::from)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subset(&self, other: &Filter) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn names(&self, alg: &Algebra) -> Vec<String> {
        self.elements().map(|x| alg.label(x).to_string()).collect()
    }

    /// `∧u`, the least element of a nonempty filter.
    pub fn generator(&self, alg: &Algebra) -> Option<ElementId> {
        let mut it = self.elements();
        let first = it.next()?;
        Some(it.fold(first, |m, x| alg.meet(m, x)))
    }

    pub fn display<'a>(&'a self, alg: &'a Algebra) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Filter, &'a Algebra);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{{{}}}", self.0.names(self.1).join(", "))
            }
        }
        D(self, alg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterKind {
    All,
    StronglyProper,
    Ultra,
    Frb,
}

#[derive(Debug, Clone)]
pub struct FilterFamily {
    pub kind: FilterKind,
    pub filters: Vec<Filter>,
}

impl FilterFamily {
    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    /// Element names of each member, for JSON output.
    pub fn to_names(&self, alg: &Algebra) -> Vec<Vec<String>> {
        self.filters.iter().map(|u| u.names(alg)).collect()
    }
}

fn bits_of(alg: &Algebra, s: &FixedBitSet) -> Vec<ElementId> {
    s.ones().filter(|&i| i < alg.size()).map(ElementId::from).collect()
}

/// Contains `1`, upward closed in `≤`, closed under `∧`.
pub fn is_filter(alg: &Algebra, s: &Filter) -> bool {
    let xs = bits_of(alg, &s.members);
    if !s.contains(alg.top()) {
        return false;
    }
    for &x in &xs {
        if alg.elements().any(|y| alg.leq(x, y) && !s.contains(y)) {
            return false;
        }
        if xs.iter().any(|&y| !s.contains(alg.meet(x, y))) {
            return false;
        }
    }
    true
}

/// A filter containing no `X ∧ ¬X`.
pub fn is_strongly_proper(alg: &Algebra, s: &Filter) -> bool {
    is_filter(alg, s) && !alg.elements().any(|x| s.contains(alg.relative_bottom(x)))
}

/// Strongly proper and not strictly contained in another strongly proper
/// filter. Maximality is tested against every filter generated by `s` and
/// one more element, which covers every strict extension.
pub fn is_ultrafilter(alg: &Algebra, s: &Filter) -> bool {
    if !is_strongly_proper(alg, s) {
        return false;
    }
    alg.elements().filter(|&e| !s.contains(e)).all(|e| {
        let bigger = generated(alg, s.elements().chain([e]));
        !is_strongly_proper(alg, &bigger)
    })
}

/// The smallest set containing `1` and the generators that is closed under
/// `∧` and upward closed.
pub fn generated(alg: &Algebra, gens: impl IntoIterator<Item = ElementId>) -> Filter {
    let n = alg.size();
    let mut members = FixedBitSet::with_capacity(n);
    members.insert(alg.top().index());
    for g in gens {
        members.insert(g.index());
    }
    loop {
        let before = members.count_ones(..);
        let xs: Vec<usize> = members.ones().collect();
        for &x in &xs {
            for &y in &xs {
                members.insert(alg.meet(ElementId::from(x), ElementId::from(y)).index());
            }
        }
        let xs: Vec<usize> = members.ones().collect();
        for x in xs {
            for y in alg.elements() {
                if alg.leq(ElementId::from(x), y) {
                    members.insert(y.index());
                }
            }
        }
        if members.count_ones(..) == before {
            return Filter { members };
        }
    }
}

/// `π₂(u) = u ∩ π₂(RB)`
pub fn project_domains(alg: &Algebra, u: &Filter) -> Vec<ElementId> {
    u.elements().filter(|&x| alg.is_relative_top(x)).collect()
}

/// `π₁(u, X) = u ∩ π₁(X)`
pub fn project_local(alg: &Algebra, u: &Filter, x: ElementId) -> Vec<ElementId> {
    let t = alg.relative_top(x);
    u.elements().filter(|&z| alg.relative_top(z) == t).collect()
}

/// Membership in `F^RB`: a filter whose trace on every touched domain is an
/// ultrafilter of that domain's Boolean algebra.
pub fn is_frb(alg: &Algebra, u: &Filter) -> Result<bool> {
    if !is_filter(alg, u) {
        return Ok(false);
    }
    for x in project_domains(alg, u) {
        let local = alg.extract_local_boolean(x)?;
        let trace = project_local(alg, u, x);
        let lf = Filter::from_elements(&local.algebra, trace.iter().map(|&g| local.local(g).expect("same domain")));
        if !is_ultrafilter(&local.algebra, &lf) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every filter, in canonical order (sorted by member bit pattern).
///
/// Seeds each principal upset and closes it; in a finite algebra whose meet
/// is a semilattice operation every filter is principal, so the seeds reach
/// every filter. Each closed set is re-checked with [`is_filter`].
pub fn enumerate_filters(alg: &Algebra) -> Vec<Filter> {
    let mut out: Vec<Filter> = alg
        .elements()
        .map(|x| generated(alg, [x]))
        .filter(|f| is_filter(alg, f))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Every filter by testing all `2^n` subsets; an oracle for
/// [`enumerate_filters`].
pub fn enumerate_filters_brute(alg: &Algebra, cap: usize) -> Result<Vec<Filter>> {
    let n = alg.size();
    if n >= usize::BITS as usize - 1 || 1usize << n > cap {
        return Err(Error::CapExceeded { what: "filter candidate subsets", needed: n, cap });
    }
    let mut out = Vec::new();
    for mask in 0usize..1 << n {
        let mut members = FixedBitSet::with_capacity(n);
        for i in 0..n {
            if mask >> i & 1 == 1 {
                members.insert(i);
            }
        }
        let f = Filter { members };
        if is_filter(alg, &f) {
            out.push(f);
        }
    }
    out.sort();
    Ok(out)
}

pub fn enumerate(alg: &Algebra, kind: FilterKind) -> Result<FilterFamily> {
    let all = enumerate_filters(alg);
    let filters = match kind {
        FilterKind::All => all,
        FilterKind::StronglyProper => all.into_iter().filter(|f| is_strongly_proper(alg, f)).collect(),
        FilterKind::Ultra => all.into_iter().filter(|f| is_ultrafilter(alg, f)).collect(),
        FilterKind::Frb => {
            let mut out = Vec::new();
            for f in all {
                if is_frb(alg, &f)? {
                    out.push(f);
                }
            }
            out
        }
    };
    Ok(FilterFamily { kind, filters })
}

/// `F^RB` in canonical order.
pub fn enumerate_frb(alg: &Algebra) -> Result<FilterFamily> {
    enumerate(alg, FilterKind::Frb)
}

fn same_domains(alg: &Algebra, a: &Filter, b: &Filter) -> bool {
    project_domains(alg, a) == project_domains(alg, b)
}

/// Extends a strongly proper filter to a member of `F^RB` with the same
/// domains and without `avoid`.
///
/// Greedy: scan elements in index order, adding any element whose generated
/// filter stays strongly proper, keeps `π₂` and excludes `avoid`; repeat to a
/// fixpoint. The result is then checked against `F^RB`.
pub fn extend_filter(alg: &Algebra, f: &Filter, avoid: ElementId) -> Result<Filter> {
    if !is_strongly_proper(alg, f) {
        return Err(Error::FilterPrecondition(format!("{} is not strongly proper", f.display(alg))));
    }
    if f.contains(avoid) {
        return Err(Error::FilterPrecondition(format!(
            "{} already contains {}",
            f.display(alg),
            alg.label(avoid)
        )));
    }
    let mut u = f.clone();
    loop {
        let mut grew = false;
        for e in alg.elements() {
            if u.contains(e) {
                continue;
            }
            let cand = generated(alg, u.elements().chain([e]));
            if !cand.contains(avoid) && is_strongly_proper(alg, &cand) && same_domains(alg, &cand, f) {
                u = cand;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    if !is_frb(alg, &u)? {
        return Err(Error::Verification(format!(
            "greedy extension of {} stopped at {}, which is not in F^RB",
            f.display(alg),
            u.display(alg)
        )));
    }
    Ok(u)
}

/// The one-step closure `{Z ∧ Y | Z ≥ X, Y ∈ F}`.
pub fn one_step_closure(alg: &Algebra, f: &Filter, x: ElementId) -> Filter {
    let mut members = FixedBitSet::with_capacity(alg.size());
    for z in alg.elements().filter(|&z| alg.leq(x, z)) {
        for y in f.elements() {
            members.insert(alg.meet(z, y).index());
        }
    }
    Filter { members }
}

/// The embedding `X ↦ ({u | X ∈ u}, {u | 1_X ∈ u})` with points the members of
/// `F^RB` in canonical order.
#[derive(Debug, Clone)]
pub struct StoneEmbedding {
    pub points: Vec<Filter>,
    pub image: Vec<SubsetPair>,
    pub report: StoneReport,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct StoneReport {
    pub points: usize,
    pub injective: bool,
    pub preserves_top: bool,
    pub neg_failures: Vec<String>,
    pub meet_failures: Vec<(String, String)>,
    pub join_failures: Vec<(String, String)>,
    pub collisions: Vec<(String, String)>,
}

impl StoneReport {
    pub fn passed(&self) -> bool {
        self.injective
            && self.preserves_top
            && self.neg_failures.is_empty()
            && self.meet_failures.is_empty()
            && self.join_failures.is_empty()
    }
}

impl fmt::Display for StoneReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "points: {}", self.points)?;
        writeln!(f, "injective: {}", self.injective)?;
        writeln!(f, "1 ↦ (F, F): {}", self.preserves_top)?;
        writeln!(f, "¬ failures: {}", self.neg_failures.len())?;
        writeln!(f, "∧ failures: {}", self.meet_failures.len())?;
        writeln!(f, "∨ failures: {}", self.join_failures.len())?;
        for (a, b) in &self.collisions {
            writeln!(f, "  collision: {a} and {b}")?;
        }
        Ok(())
    }
}

pub fn stone_embed(alg: &Algebra) -> Result<StoneEmbedding> {
    let points = enumerate_frb(alg)?.filters;
    if points.len() > MAX_POINTS {
        return Err(Error::CapExceeded { what: "F^RB points", needed: points.len(), cap: MAX_POINTS });
    }
    let set = |x: ElementId| -> PointSet {
        points
            .iter()
            .enumerate()
            .filter(|(_, u)| u.contains(x))
            .fold(0, |m, (i, _)| m | 1 << i)
    };
    let image: Vec<SubsetPair> = alg
        .elements()
        .map(|x| SubsetPair { truth: set(x), domain: set(alg.relative_top(x)) })
        .collect();
    let full: PointSet = if points.len() == MAX_POINTS { PointSet::MAX } else { (1 << points.len()) - 1 };
    let h = |x: ElementId| image[x.index()];
    let name = |x: ElementId| alg.label(x).to_string();
    let mut report = StoneReport {
        points: points.len(),
        preserves_top: h(alg.top()) == SubsetPair { truth: full, domain: full },
        ..Default::default()
    };
    for x in alg.elements() {
        if h(alg.neg(x)) != c_neg(h(x)) {
            report.neg_failures.push(name(x));
        }
        for y in alg.elements() {
            if h(alg.meet(x, y)) != c_meet(h(x), h(y)) {
                report.meet_failures.push((name(x), name(y)));
            }
            if h(alg.join(x, y)) != c_join(h(x), h(y)) {
                report.join_failures.push((name(x), name(y)));
            }
            if x < y && h(x) == h(y) {
                report.collisions.push((name(x), name(y)));
            }
        }
    }
    report.injective = report.collisions.is_empty();
    Ok(StoneEmbedding { points, image, report })
}

/// Stone embedding that fails unless the verification report passes.
pub fn stone_embed_verified(alg: &Algebra) -> Result<StoneEmbedding> {
    let e = stone_embed(alg)?;
    if !e.report.passed() {
        return Err(Error::Verification(format!("stone embedding:\n{}", e.report)));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ba4() -> Algebra {
        Algebra::powerset(&["a", "b"])
    }

    #[test]
    fn basic_predicates() {
        let b = ba4();
        let one = Filter::from_elements(&b, [b.top()]);
        assert!(is_filter(&b, &one));
        assert!(is_strongly_proper(&b, &one));
        assert!(!is_ultrafilter(&b, &one));
        let a = b.find("a").unwrap();
        let up = Filter::principal(&b, a);
        assert!(is_ultrafilter(&b, &up));
        let everything = Filter::principal(&b, b.bottom());
        assert!(is_filter(&b, &everything));
        assert!(!is_strongly_proper(&b, &everything));
        assert!(!is_filter(&b, &Filter::from_elements(&b, [a])));
    }

    #[test]
    fn two_atom_algebra_has_two_points() {
        let b = ba4();
        let fam = enumerate_frb(&b).unwrap();
        assert_eq!(fam.len(), 2);
        let e = stone_embed_verified(&b).unwrap();
        assert_eq!(e.image[b.top().index()], SubsetPair { truth: 0b11, domain: 0b11 });
    }

    #[test]
    fn seeded_enumeration_matches_brute_force() {
        let b = Algebra::powerset(&["a", "b", "c"]);
        assert_eq!(enumerate_filters(&b), enumerate_filters_brute(&b, DEFAULT_CANDIDATE_CAP).unwrap());
    }

    #[test]
    fn trivial_algebra_has_no_points() {
        let t = Algebra::trivial();
        assert_eq!(enumerate_filters(&t).len(), 1);
        assert!(enumerate_frb(&t).unwrap().is_empty());
    }

    #[test]
    fn extension_of_top_filter() {
        let b = Algebra::powerset(&["a", "b", "c"]);
        let one = Filter::from_elements(&b, [b.top()]);
        for avoid in b.elements().filter(|&x| x != b.top()) {
            let u = extend_filter(&b, &one, avoid).unwrap();
            assert!(!u.contains(avoid));
            assert!(is_ultrafilter(&b, &u));
        }
        assert!(extend_filter(&b, &one, b.top()).is_err());
    }
}
