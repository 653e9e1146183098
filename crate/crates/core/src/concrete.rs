//! Concrete relativized Boolean algebras over a finite universe `W`: pairs
//! `(A, B)` with `A ⊆ B ⊆ W`, read as "defined on B, true on A".

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{Algebra, ElementId};
use crate::error::{Error, Result};

/// A set of points (or worlds) as a bit mask over a fixed ordering.
pub type PointSet = u128;

/// Largest universe a [`PointSet`] can address.
pub const MAX_POINTS: usize = 128;

/// Default largest universe accepted by [`materialize`].
pub const DEFAULT_MATERIALIZE_POINTS: usize = 16;

pub fn iter_points(set: PointSet) -> impl Iterator<Item = usize> {
    (0..MAX_POINTS).filter(move |&i| set >> i & 1 == 1)
}

pub fn full_set(n: usize) -> PointSet {
    if n >= MAX_POINTS {
        PointSet::MAX
    } else {
        (1u128 << n) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    points: Vec<String>,
}

impl Universe {
    pub fn new<S: Into<String>>(points: impl IntoIterator<Item = S>) -> Result<Self> {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        if points.len() > MAX_POINTS {
            return Err(Error::CapExceeded {
                what: "universe points",
                needed: points.len(),
                cap: MAX_POINTS,
            });
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::DuplicateName(p.clone()));
            }
        }
        Ok(Universe { points })
    }

    /// Parses `W = {x,y,z}` (the `W =` prefix is optional).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let t = t.strip_prefix("W").map(|r| r.trim_start()).and_then(|r| r.strip_prefix('=')).unwrap_or(t);
        let inner = t
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Input(format!("expected `{{...}}` universe, got `{text}`")))?;
        let names: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Universe::new(names)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn full(&self) -> PointSet {
        full_set(self.len())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }

    pub fn format_set(&self, set: PointSet) -> String {
        let names: Vec<&str> = iter_points(set)
            .take_while(|&i| i < self.len())
            .map(|i| self.points[i].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn parse_set(&self, text: &str) -> Result<PointSet> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Input(format!("expected `{{...}}`, got `{text}`")))?;
        let mut set = 0;
        for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let i = self.index_of(name).ok_or_else(|| Error::UnknownWorld(name.to_string()))?;
            set |= 1 << i;
        }
        Ok(set)
    }

    pub fn format_pair(&self, p: SubsetPair) -> String {
        format!("({},{})", self.format_set(p.truth), self.format_set(p.domain))
    }

    /// Parses `({x},{x,y})`.
    pub fn parse_pair(&self, text: &str) -> Result<SubsetPair> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Input(format!("expected `(A,B)`, got `{text}`")))?;
        let split = inner
            .find('}')
            .ok_or_else(|| Error::Input(format!("expected `(A,B)`, got `{text}`")))?;
        let (a, rest) = inner.split_at(split + 1);
        let b = rest
            .trim_start()
            .strip_prefix(',')
            .ok_or_else(|| Error::Input(format!("expected `,` in `{text}`")))?;
        SubsetPair::new(self.parse_set(a)?, self.parse_set(b)?)
            .ok_or_else(|| Error::Input(format!("`{text}`: truth set is not inside the domain")))
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W = {{{}}}", self.points.join(","))
    }
}

/// `(A, B)` with `A ⊆ B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetPair {
    pub truth: PointSet,
    pub domain: PointSet,
}

impl SubsetPair {
    pub fn new(truth: PointSet, domain: PointSet) -> Option<Self> {
        (truth & !domain == 0).then_some(SubsetPair { truth, domain })
    }

    pub fn relative_top(self) -> SubsetPair {
        SubsetPair { truth: self.domain, domain: self.domain }
    }

    pub fn relative_bottom(self) -> SubsetPair {
        SubsetPair { truth: 0, domain: self.domain }
    }

    /// Product order: `A ⊆ A'` and `B ⊆ B'`.
    pub fn leq(self, other: SubsetPair) -> bool {
        self.truth & !other.truth == 0 && self.domain & !other.domain == 0
    }
}

/// `¬(A,B) = (B∖A, B)`
pub fn c_neg(p: SubsetPair) -> SubsetPair {
    SubsetPair { truth: p.domain & !p.truth, domain: p.domain }
}

/// `(A,B) ∧ (A',B') = (A∩A', B∩B')`
pub fn c_meet(p: SubsetPair, q: SubsetPair) -> SubsetPair {
    SubsetPair { truth: p.truth & q.truth, domain: p.domain & q.domain }
}

/// `(A,B) ∨ (A',B') = ((A∪A') ∩ B∩B', B∩B')`
pub fn c_join(p: SubsetPair, q: SubsetPair) -> SubsetPair {
    let d = p.domain & q.domain;
    SubsetPair { truth: (p.truth | q.truth) & d, domain: d }
}

/// A concrete RBA with its element table.
#[derive(Debug, Clone)]
pub struct ConcreteRba {
    pub universe: Universe,
    pub pairs: Vec<SubsetPair>,
    index: HashMap<SubsetPair, ElementId>,
    pub algebra: Algebra,
}

impl ConcreteRba {
    pub fn element(&self, p: SubsetPair) -> Option<ElementId> {
        self.index.get(&p).copied()
    }

    pub fn pair(&self, x: ElementId) -> SubsetPair {
        self.pairs[x.index()]
    }
}

/// All `3^|W|` pairs, ordered lexicographically on `(B, A)` bit patterns.
pub fn materialize(universe: &Universe) -> Result<ConcreteRba> {
    materialize_with_cap(universe, DEFAULT_MATERIALIZE_POINTS)
}

pub fn materialize_with_cap(universe: &Universe, max_points: usize) -> Result<ConcreteRba> {
    let n = universe.len();
    if n > max_points.min(20) {
        return Err(Error::CapExceeded {
            what: "materialized universe points",
            needed: n,
            cap: max_points.min(20),
        });
    }
    let mut pairs = Vec::with_capacity(3usize.pow(n as u32));
    for b in 0..1u128 << n {
        // all subsets of b in increasing numeric order
        let mut subs: Vec<PointSet> = Vec::with_capacity(1 << b.count_ones());
        let mut a: PointSet = 0;
        loop {
            subs.push(a);
            if a == b {
                break;
            }
            a = (a.wrapping_sub(b)) & b;
        }
        subs.sort_unstable();
        pairs.extend(subs.into_iter().map(|a| SubsetPair { truth: a, domain: b }));
    }
    let index: HashMap<SubsetPair, ElementId> =
        pairs.iter().enumerate().map(|(i, &p)| (p, ElementId::from(i))).collect();
    let labels = pairs.iter().map(|&p| universe.format_pair(p)).collect();
    let full = universe.full();
    let at = |p: SubsetPair| index[&p].index();
    let algebra = Algebra::from_fn(
        labels,
        |a, b| at(c_meet(pairs[a], pairs[b])),
        |a, b| at(c_join(pairs[a], pairs[b])),
        |a| at(c_neg(pairs[a])),
        at(SubsetPair { truth: full, domain: full }),
        at(SubsetPair { truth: 0, domain: 0 }),
    )?;
    Ok(ConcreteRba { universe: universe.clone(), pairs, index, algebra })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(names: &[&str]) -> Universe {
        Universe::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn operation_examples() {
        let u = w(&["x", "y", "z"]);
        let p = |s: &str| u.parse_pair(s).unwrap();
        assert_eq!(c_neg(p("({x},{x,y})")), p("({y},{x,y})"));
        assert_eq!(c_neg(p("({x,y},{x,y})")), p("({},{x,y})"));
        assert_eq!(c_meet(p("({x},{x,y})"), p("({y},{x,y})")), p("({},{x,y})"));
        assert_eq!(c_meet(p("({x},{x,y})"), p("({x,y,z},{x,y,z})")), p("({x},{x,y})"));
        assert_eq!(c_meet(p("({x},{x,y})"), p("({},{})")), p("({},{})"));
        assert_eq!(c_join(p("({x},{x,y})"), p("({y},{x,y})")), p("({x,y},{x,y})"));
        assert_eq!(c_join(p("({x},{x,y})"), p("({x,y,z},{x,y,z})")), p("({x,y},{x,y})"));
        // ((A ∪ A') ∩ (B ∩ B'), B ∩ B') evaluated by hand
        assert_eq!(c_join(p("({x},{x,y,z})"), p("({y},{x,y})")), p("({x,y},{x,y})"));
    }

    #[test]
    fn pair_text_round_trip() {
        let u = w(&["x", "y"]);
        let p = u.parse_pair("( {x} , {x,y} )").unwrap();
        assert_eq!(u.format_pair(p), "({x},{x,y})");
        assert!(u.parse_pair("({x,y},{x})").is_err());
        assert!(u.parse_pair("({q},{x})").is_err());
        assert_eq!(Universe::parse("W = {x,y,z}").unwrap().len(), 3);
    }

    #[test]
    fn materialized_sizes() {
        for (n, size) in [(0, 1), (1, 3), (2, 9), (3, 27)] {
            let names: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
            let c = materialize(&Universe::new(names).unwrap()).unwrap();
            assert_eq!(c.algebra.size(), size);
        }
    }

    #[test]
    fn canonical_order_is_by_domain_then_truth() {
        let c = materialize(&w(&["x"])).unwrap();
        let labels: Vec<&str> = c.algebra.labels().iter().map(String::as_str).collect();
        assert_eq!(labels, ["({},{})", "({},{x})", "({x},{x})"]);
    }

    #[test]
    fn materialize_respects_cap() {
        let names: Vec<String> = (0..5).map(|i| format!("w{i}")).collect();
        assert!(materialize_with_cap(&Universe::new(names).unwrap(), 4).is_err());
    }
}
