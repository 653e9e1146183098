//! Bounded formula enumeration, explicit and by semantic class.
//!
//! Every semantics here is compositional: the value of a formula, its set of
//! propositions and its modal depth depend only on the same data for its
//! immediate subformulas. Formulas can therefore be grouped into classes
//! keyed by that triple, and the classes reachable within a connective budget
//! are found by combining classes instead of formulas. Each class keeps its
//! smallest member as a representative. The result is exact: a key is
//! reported iff some formula within the budget has it.

use std::collections::HashMap;

use super::{eval, Formula, Prop, Semantics};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Largest number of primitive connectives.
    pub budget: usize,
    pub modal: bool,
    pub max_depth: usize,
}

impl ClosureOptions {
    pub fn modal(budget: usize, max_depth: usize) -> Self {
        ClosureOptions { budget, modal: true, max_depth }
    }

    pub fn modal_free(budget: usize) -> Self {
        ClosureOptions { budget, modal: false, max_depth: 0 }
    }
}

#[derive(Debug, Clone)]
pub struct Class<V> {
    pub value: V,
    /// Bit `i` set iff `props[i]` occurs in the members.
    pub props: u64,
    pub depth: usize,
    /// Size of the smallest member.
    pub size: usize,
    pub rep: Formula,
}

type Key<V> = (V, u64, usize);

struct Builder<'a, S: Semantics> {
    sem: &'a S,
    classes: Vec<Class<S::Value>>,
    seen: HashMap<Key<S::Value>, usize>,
}

impl<S: Semantics> Builder<'_, S> {
    fn offer(&mut self, value: S::Value, props: u64, depth: usize, size: usize, rep: impl FnOnce() -> Formula) -> bool {
        let key = (value, props, depth);
        if self.seen.contains_key(&key) {
            return false;
        }
        self.seen.insert(key.clone(), self.classes.len());
        self.classes.push(Class { value: key.0, props, depth, size, rep: rep() });
        true
    }

    fn atoms(&mut self, props: &[Prop]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let top = self.sem.top();
        if self.offer(top, 0, 0, 0, Formula::top) {
            out.push(self.classes.len() - 1);
        }
        for (i, p) in props.iter().enumerate() {
            let v = self.sem.prop(p).ok_or_else(|| Error::UnboundProp(p.to_string()))?;
            if self.offer(v, 1 << i, 0, 0, || Formula::Prop(p.clone())) {
                out.push(self.classes.len() - 1);
            }
        }
        Ok(out)
    }

    /// Applies the unary connectives to class `i`, pushing new classes.
    fn unary(&mut self, i: usize, size: usize, opts: &ClosureOptions, out: &mut Vec<usize>) {
        let c = self.classes[i].clone();
        let v = self.sem.neg(&c.value);
        if self.offer(v, c.props, c.depth, size, || Formula::neg(c.rep.clone())) {
            out.push(self.classes.len() - 1);
        }
        if opts.modal && c.depth < opts.max_depth {
            let v = self.sem.aware(&c.value);
            if self.offer(v, c.props, c.depth + 1, size, || Formula::aware(c.rep.clone())) {
                out.push(self.classes.len() - 1);
            }
            let v = self.sem.know(&c.value);
            if self.offer(v, c.props, c.depth + 1, size, || Formula::know(c.rep.clone())) {
                out.push(self.classes.len() - 1);
            }
        }
    }

    fn conj(&mut self, i: usize, j: usize, size: usize, out: &mut Vec<usize>) {
        let (a, b) = (&self.classes[i], &self.classes[j]);
        let v = self.sem.and(&a.value, &b.value);
        let (props, depth) = (a.props | b.props, a.depth.max(b.depth));
        let key = (v, props, depth);
        if self.seen.contains_key(&key) {
            return;
        }
        let rep = Formula::and(a.rep.clone(), b.rep.clone());
        self.seen.insert(key.clone(), self.classes.len());
        self.classes.push(Class { value: key.0, props, depth, size, rep });
        out.push(self.classes.len() - 1);
    }
}

/// Every class of formulas over `props` within the budget, in order of
/// smallest member size.
pub fn class_closure<S: Semantics>(sem: &S, props: &[Prop], opts: ClosureOptions) -> Result<Vec<Class<S::Value>>> {
    if props.len() > 64 {
        return Err(Error::TooManyProps { count: props.len(), limit: 64 });
    }
    let mut b = Builder { sem, classes: Vec::new(), seen: HashMap::new() };
    let mut levels = vec![b.atoms(props)?];
    for s in 1..=opts.budget {
        let mut new = Vec::new();
        for i in levels[s - 1].clone() {
            b.unary(i, s, &opts, &mut new);
        }
        for left in 0..s {
            let right = s - 1 - left;
            for i in levels[left].clone() {
                for &j in &levels[right].clone() {
                    b.conj(i, j, s, &mut new);
                }
            }
        }
        levels.push(new);
    }
    Ok(b.classes)
}

/// Every class of formulas over `props` without a size bound (modal depth
/// still bounded by `opts.max_depth`). Terminates because the value space of
/// a finite semantics is finite. Sizes are those of the representatives,
/// not necessarily minimal.
pub fn saturate<S: Semantics>(sem: &S, props: &[Prop], opts: ClosureOptions) -> Result<Vec<Class<S::Value>>> {
    let mut b = Builder { sem, classes: Vec::new(), seen: HashMap::new() };
    let mut frontier = b.atoms(props)?;
    while !frontier.is_empty() {
        let mut new = Vec::new();
        for &i in &frontier {
            let s = b.classes[i].size + 1;
            b.unary(i, s, &opts, &mut new);
            let known = b.classes.len();
            for j in 0..known {
                let s = b.classes[i].size + b.classes[j].size + 1;
                b.conj(i, j, s, &mut new);
                b.conj(j, i, s, &mut new);
            }
        }
        frontier = new;
    }
    Ok(b.classes)
}

/// All formulas over `props` (and `1`) within the budget, by increasing size.
pub fn enumerate_formulas(props: &[Prop], opts: ClosureOptions) -> Vec<Formula> {
    // by_size[s][d]: formulas of size s and modal depth d
    let mut by_size: Vec<Vec<Vec<Formula>>> = Vec::new();
    let depths = if opts.modal { opts.max_depth + 1 } else { 1 };
    let mut atoms = vec![Vec::new(); depths];
    atoms[0].push(Formula::Top);
    atoms[0].extend(props.iter().cloned().map(Formula::Prop));
    by_size.push(atoms);
    for s in 1..=opts.budget {
        let mut level = vec![Vec::new(); depths];
        for d in 0..depths {
            for f in &by_size[s - 1][d] {
                level[d].push(Formula::neg(f.clone()));
                if opts.modal && d < opts.max_depth {
                    level[d + 1].push(Formula::aware(f.clone()));
                    level[d + 1].push(Formula::know(f.clone()));
                }
            }
        }
        for left in 0..s {
            let right = s - 1 - left;
            for da in 0..depths {
                for db in 0..depths {
                    for a in &by_size[left][da] {
                        for b in &by_size[right][db] {
                            level[da.max(db)].push(Formula::and(a.clone(), b.clone()));
                        }
                    }
                }
            }
        }
        by_size.push(level);
    }
    by_size.into_iter().flatten().flatten().collect()
}

/// Number of formulas `enumerate_formulas` would return over `atoms`
/// atomic formulas (propositions plus `1`), without building them.
pub fn count_formulas(atoms: usize, opts: ClosureOptions) -> u128 {
    let depths = if opts.modal { opts.max_depth + 1 } else { 1 };
    // t[s][d]: formulas of size s with depth at most d
    let mut t: Vec<Vec<u128>> = vec![vec![atoms as u128; depths]];
    for s in 1..=opts.budget {
        let mut row = vec![0u128; depths];
        for d in 0..depths {
            let mut n = t[s - 1][d];
            if opts.modal && d > 0 {
                n += 2 * t[s - 1][d - 1];
            }
            for left in 0..s {
                n += t[left][d] * t[s - 1 - left][d];
            }
            row[d] = n;
        }
        t.push(row);
    }
    t.iter().map(|row| row[depths - 1]).sum()
}

/// Evaluates a formula list and groups it by key, as an explicit oracle for
/// [`class_closure`].
pub fn explicit_keys<S: Semantics>(sem: &S, props: &[Prop], formulas: &[Formula]) -> Result<HashMap<Key<S::Value>, usize>> {
    let mut out = HashMap::new();
    for f in formulas {
        let v = eval(sem, f)?;
        let mask = super::props_of(f)
            .iter()
            .map(|p| props.iter().position(|q| q == p).map_or(0, |i| 1u64 << i))
            .fold(0, |m, b| m | b);
        let size = f.size();
        out.entry((v, mask, f.modal_depth()))
            .and_modify(|s: &mut usize| *s = (*s).min(size))
            .or_insert(size);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::ClassicalSemantics;
    use super::*;

    fn pq() -> Vec<Prop> {
        vec![Prop::new("p"), Prop::new("q")]
    }

    #[test]
    fn counts_match_explicit_enumeration() {
        for opts in [ClosureOptions::modal_free(4), ClosureOptions::modal(3, 2), ClosureOptions::modal(4, 1)] {
            let fs = enumerate_formulas(&pq(), opts);
            assert_eq!(fs.len() as u128, count_formulas(3, opts));
            assert!(fs.iter().all(|f| f.size() <= opts.budget));
        }
        // Over {p, q, 1}: size 1 has 3·3 unary + 3·3 conjunctions; size 2 has
        // 18·3 unary + 2·3·18 conjunctions.
        assert_eq!(count_formulas(3, ClosureOptions::modal(2, 2)), 3 + 18 + 162);
    }

    #[test]
    fn classes_match_explicit_grouping() {
        let sem = ClassicalSemantics::new(pq()).unwrap();
        let opts = ClosureOptions::modal_free(5);
        let classes = class_closure(&sem, &pq(), opts).unwrap();
        let explicit = explicit_keys(&sem, &pq(), &enumerate_formulas(&pq(), opts)).unwrap();
        assert_eq!(classes.len(), explicit.len());
        for c in &classes {
            let key = (c.value, c.props, c.depth);
            assert_eq!(explicit.get(&key), Some(&c.size), "{}", c.rep);
            assert_eq!(eval(&sem, &c.rep).unwrap(), c.value);
            assert_eq!(c.rep.size(), c.size);
        }
    }

    #[test]
    fn saturation_reaches_every_truth_table() {
        let sem = ClassicalSemantics::new(pq()).unwrap();
        let classes = saturate(&sem, &pq(), ClosureOptions::modal_free(0)).unwrap();
        let tables: std::collections::BTreeSet<u64> = classes.iter().map(|c| c.value).collect();
        assert_eq!(tables.len(), 16);
    }
}
