//! Awareness frames and models: preordered worlds with a serial accessibility
//! relation, per-proposition language sets `L` and valuations `V`, and the
//! three-valued truth definition that goes with them.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::concrete::{c_meet, c_neg, full_set, iter_points, PointSet, SubsetPair, MAX_POINTS};
use crate::error::{Error, Result};
use crate::report::{AxiomReport, Law};
use crate::syntax::{eval, props_of, Formula, Prop, Semantics};

pub type WorldSet = PointSet;

/// Worlds with `≥` and `R`, stored as one row per world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AwarenessFrame {
    worlds: Vec<String>,
    /// `up[w] = {v | v ≥ w}`
    up: Vec<WorldSet>,
    /// `access[w] = R(w)`
    access: Vec<WorldSet>,
}

fn close_preorder(n: usize, mut up: Vec<WorldSet>) -> Vec<WorldSet> {
    for (w, row) in up.iter_mut().enumerate() {
        *row |= 1 << w;
    }
    // Warshall on rows: v ≥ w and u ≥ v give u ≥ w.
    for v in 0..n {
        for w in 0..n {
            if up[w] >> v & 1 == 1 {
                up[w] |= up[v];
            }
        }
    }
    up
}

impl AwarenessFrame {
    /// `geq` lists generator pairs `(w, v)` meaning `w ≥ v`; the reflexive
    /// transitive closure is taken.
    pub fn new(worlds: Vec<String>, geq: &[(usize, usize)], access: &[(usize, usize)]) -> Result<Self> {
        let n = worlds.len();
        if n > MAX_POINTS {
            return Err(Error::CapExceeded { what: "worlds", needed: n, cap: MAX_POINTS });
        }
        let mut up = vec![0; n];
        let mut r = vec![0; n];
        for &(w, v) in geq {
            if w >= n || v >= n {
                return Err(Error::Model(format!("order pair ({w}, {v}) is out of range")));
            }
            up[v] |= 1 << w;
        }
        for &(w, v) in access {
            if w >= n || v >= n {
                return Err(Error::Model(format!("access pair ({w}, {v}) is out of range")));
            }
            r[w] |= 1 << v;
        }
        AwarenessFrame::from_rows(worlds, close_preorder(n, up), r)
    }

    /// Rows taken as given, without closing the order. Used to build
    /// deliberately ill-formed frames.
    pub fn from_rows(worlds: Vec<String>, up: Vec<WorldSet>, access: Vec<WorldSet>) -> Result<Self> {
        let n = worlds.len();
        if n > MAX_POINTS || up.len() != n || access.len() != n {
            return Err(Error::Model("row count does not match the worlds".into()));
        }
        for (i, w) in worlds.iter().enumerate() {
            if worlds[..i].contains(w) {
                return Err(Error::DuplicateName(w.clone()));
            }
        }
        let full = full_set(n);
        if up.iter().chain(&access).any(|r| r & !full != 0) {
            return Err(Error::Model("relation row mentions a world out of range".into()));
        }
        Ok(AwarenessFrame { worlds, up, access })
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world(&self, name: &str) -> Result<usize> {
        self.worlds.iter().position(|w| w == name).ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }

    pub fn all(&self) -> WorldSet {
        full_set(self.len())
    }

    /// `R(w)`
    pub fn successors(&self, w: usize) -> WorldSet {
        self.access[w]
    }

    /// `{v | v ≥ w}`
    pub fn above(&self, w: usize) -> WorldSet {
        self.up[w]
    }

    /// `w ≥ v`
    pub fn geq(&self, w: usize, v: usize) -> bool {
        self.up[v] >> w & 1 == 1
    }

    pub fn related(&self, w: usize, v: usize) -> bool {
        self.access[w] >> v & 1 == 1
    }

    pub fn is_upward_closed(&self, s: WorldSet) -> bool {
        iter_points(s).all(|w| w >= self.len() || self.up[w] & !s == 0)
    }

    /// `{w | v ≥ w' for some w' ∈ s}` closed upward.
    pub fn up_closure(&self, s: WorldSet) -> WorldSet {
        iter_points(s).take_while(|&w| w < self.len()).fold(0, |m, w| m | self.up[w])
    }

    /// `{w | R(w) ⊆ a}`
    pub fn box_of(&self, a: WorldSet) -> WorldSet {
        (0..self.len()).filter(|&w| self.access[w] & !a == 0).fold(0, |m, w| m | 1 << w)
    }

    pub fn format_set(&self, s: WorldSet) -> String {
        let names: Vec<&str> = iter_points(s)
            .take_while(|&w| w < self.len())
            .map(|w| self.worlds[w].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn property(&self, which: FrameProperty) -> bool {
        let n = self.len();
        let ws = 0..n;
        match which {
            FrameProperty::Serial => self.access.iter().all(|&r| r != 0),
            FrameProperty::Reflexive => ws.clone().all(|w| self.related(w, w)),
            FrameProperty::Transitive => ws.clone().all(|w| {
                iter_points(self.access[w]).all(|v| self.access[v] & !self.access[w] == 0)
            }),
            FrameProperty::Euclidean => ws.clone().all(|w| {
                iter_points(self.access[w]).all(|v| self.access[w] & !self.access[v] == 0)
            }),
            FrameProperty::KaCond => ws.clone().all(|w| {
                let below_r = self.up_closure(self.access[w]);
                iter_points(self.access[w]).all(|v| self.access[v] & !below_r == 0)
            }),
            FrameProperty::NecCond => ws.clone().all(|w| self.access[w] & !self.up[w] == 0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameProperty {
    Serial,
    Reflexive,
    Transitive,
    Euclidean,
    KaCond,
    NecCond,
}

impl FrameProperty {
    pub const ALL: [FrameProperty; 6] = [
        FrameProperty::Serial,
        FrameProperty::Reflexive,
        FrameProperty::Transitive,
        FrameProperty::Euclidean,
        FrameProperty::KaCond,
        FrameProperty::NecCond,
    ];

    pub fn id(self) -> &'static str {
        match self {
            FrameProperty::Serial => "serial",
            FrameProperty::Reflexive => "reflexive",
            FrameProperty::Transitive => "transitive",
            FrameProperty::Euclidean => "euclidean",
            FrameProperty::KaCond => "KA-cond",
            FrameProperty::NecCond => "nec-cond",
        }
    }
}

impl fmt::Display for FrameProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Whether a formula is defined at a world, and if so its truth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TruthStatus {
    Undefined,
    True,
    False,
}

impl fmt::Display for TruthStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthStatus::Undefined => "undefined",
            TruthStatus::True => "true",
            TruthStatus::False => "false",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AwarenessModel {
    pub frame: AwarenessFrame,
    props: BTreeMap<Prop, (WorldSet, WorldSet)>,
}

impl AwarenessModel {
    /// `props` maps each proposition to `(L(p), V(p))`. Conditions (i) and
    /// (ii) are not enforced here; see [`AwarenessModel::check`].
    pub fn new(frame: AwarenessFrame, props: BTreeMap<Prop, (WorldSet, WorldSet)>) -> Self {
        AwarenessModel { frame, props }
    }

    pub fn props(&self) -> impl Iterator<Item = &Prop> {
        self.props.keys()
    }

    /// `(p, L(p), V(p))` in proposition order.
    pub fn entries(&self) -> impl Iterator<Item = (&Prop, WorldSet, WorldSet)> {
        self.props.iter().map(|(p, &(l, v))| (p, l, v))
    }

    /// `L(p)`; empty for propositions the model does not mention.
    pub fn lang(&self, p: &Prop) -> WorldSet {
        self.props.get(p).map_or(0, |&(l, _)| l)
    }

    /// `V(p)`
    pub fn val(&self, p: &Prop) -> WorldSet {
        self.props.get(p).map_or(0, |&(_, v)| v)
    }

    /// Verifies (i), (ii), seriality and the preorder laws.
    pub fn check(&self) -> AxiomReport {
        let f = &self.frame;
        let mut r = AxiomReport::new();
        let name = |w: usize| f.worlds[w].clone();
        for w in 0..f.len() {
            if f.access[w] == 0 {
                r.record(Law::Serial, "R(w) is nonempty", vec![name(w)]);
            }
            if !f.geq(w, w) {
                r.record(Law::PreorderReflexive, "w ≥ w", vec![name(w)]);
            }
            for v in iter_points(f.up[w]) {
                // v ≥ w; any u ≥ v must satisfy u ≥ w
                for u in iter_points(f.up[v]) {
                    if !f.geq(u, w) {
                        r.record(Law::PreorderTransitive, "u ≥ v ≥ w ⇒ u ≥ w", vec![name(u), name(v), name(w)]);
                    }
                }
            }
        }
        for (p, &(l, v)) in &self.props {
            for w in iter_points(l) {
                for u in iter_points(f.up[w] & !l) {
                    r.record(Law::LangUpward, "L(p) is ≥-upward closed", vec![p.to_string(), name(w), name(u)]);
                }
            }
            for w in iter_points(v & !l) {
                r.record(Law::ValInLang, "V(p) ⊆ L(p)", vec![p.to_string(), name(w)]);
            }
        }
        r
    }

    /// `φ ∈ L^{A,K}(ω)`
    pub fn in_language(&self, w: usize, f: &Formula) -> bool {
        props_of(f).iter().all(|p| self.lang(p) >> w & 1 == 1)
    }

    /// The truth definition, by direct recursion on `φ`.
    pub fn truth(&self, w: usize, f: &Formula) -> TruthStatus {
        if !self.in_language(w, f) {
            return TruthStatus::Undefined;
        }
        if self.holds(w, f) {
            TruthStatus::True
        } else {
            TruthStatus::False
        }
    }

    /// `⟨M, ω⟩ ⊨ φ`; false wherever `φ` is undefined.
    fn holds(&self, w: usize, f: &Formula) -> bool {
        if !self.in_language(w, f) {
            return false;
        }
        let succ = || iter_points(self.frame.access[w]);
        match f {
            Formula::Prop(p) => self.val(p) >> w & 1 == 1,
            Formula::Top => true,
            Formula::Neg(a) => !self.holds(w, a),
            Formula::And(a, b) => self.holds(w, a) && self.holds(w, b),
            Formula::Aware(a) => succ().all(|v| self.in_language(v, a)),
            Formula::Know(a) => succ().all(|v| self.holds(v, a)),
        }
    }

    /// `(V(φ), L(φ))` computed world by world from [`AwarenessModel::truth`].
    pub fn extension(&self, f: &Formula) -> SubsetPair {
        let statuses: Vec<TruthStatus> = (0..self.frame.len()).map(|w| self.truth(w, f)).collect();
        statuses_to_pair(&statuses)
    }

    /// `V(φ) = L(φ)`, computed bottom-up with [`ModelSemantics`].
    pub fn valid(&self, f: &Formula) -> bool {
        let e = eval(&ModelSemantics(self), f).expect("model semantics interprets every proposition");
        e.truth == e.domain
    }

    /// Copy with every proposition of `props` absent from the model given
    /// `L(p) = V(p) = ∅`, so that evaluation never meets an unbound name.
    pub fn with_props(&self, props: &[Prop]) -> AwarenessModel {
        let mut out = self.clone();
        for p in props {
            out.props.entry(p.clone()).or_insert((0, 0));
        }
        out
    }
}

/// Extensions `(V(φ), L(φ))` as concrete pairs over the worlds. Unknown
/// propositions are undefined everywhere.
#[derive(Debug, Clone, Copy)]
pub struct ModelSemantics<'a>(pub &'a AwarenessModel);

impl ModelSemantics<'_> {
    fn box_pair(&self, a: SubsetPair) -> SubsetPair {
        SubsetPair { truth: self.0.frame.box_of(a.truth) & a.domain, domain: a.domain }
    }
}

impl Semantics for ModelSemantics<'_> {
    type Value = SubsetPair;

    fn prop(&self, p: &Prop) -> Option<SubsetPair> {
        Some(SubsetPair { truth: self.0.val(p), domain: self.0.lang(p) })
    }
    fn top(&self) -> SubsetPair {
        let all = self.0.frame.all();
        SubsetPair { truth: all, domain: all }
    }
    fn neg(&self, a: &SubsetPair) -> SubsetPair {
        c_neg(*a)
    }
    fn and(&self, a: &SubsetPair, b: &SubsetPair) -> SubsetPair {
        c_meet(*a, *b)
    }
    fn aware(&self, a: &SubsetPair) -> SubsetPair {
        self.box_pair(a.relative_top())
    }
    fn know(&self, a: &SubsetPair) -> SubsetPair {
        self.box_pair(*a)
    }
}

/// The truth clauses applied world by world to status vectors. Agrees with
/// [`AwarenessModel::truth`] but evaluates each subformula once.
#[derive(Debug, Clone, Copy)]
pub struct TruthSemantics<'a>(pub &'a AwarenessModel);

impl TruthSemantics<'_> {
    fn pointwise(&self, a: &[TruthStatus], rule: impl Fn(usize) -> bool) -> Vec<TruthStatus> {
        a.iter()
            .enumerate()
            .map(|(w, &s)| match s {
                TruthStatus::Undefined => TruthStatus::Undefined,
                _ if rule(w) => TruthStatus::True,
                _ => TruthStatus::False,
            })
            .collect()
    }
}

impl Semantics for TruthSemantics<'_> {
    type Value = Vec<TruthStatus>;

    fn prop(&self, p: &Prop) -> Option<Self::Value> {
        let (l, v) = (self.0.lang(p), self.0.val(p));
        Some(
            (0..self.0.frame.len())
                .map(|w| match (l >> w & 1, v >> w & 1) {
                    (0, _) => TruthStatus::Undefined,
                    (_, 1) => TruthStatus::True,
                    _ => TruthStatus::False,
                })
                .collect(),
        )
    }
    fn top(&self) -> Self::Value {
        vec![TruthStatus::True; self.0.frame.len()]
    }
    fn neg(&self, a: &Self::Value) -> Self::Value {
        self.pointwise(a, |w| a[w] == TruthStatus::False)
    }
    fn and(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| match (x, y) {
                (TruthStatus::Undefined, _) | (_, TruthStatus::Undefined) => TruthStatus::Undefined,
                (TruthStatus::True, TruthStatus::True) => TruthStatus::True,
                _ => TruthStatus::False,
            })
            .collect()
    }
    fn aware(&self, a: &Self::Value) -> Self::Value {
        let f = &self.0.frame;
        self.pointwise(a, |w| iter_points(f.successors(w)).all(|v| a[v] != TruthStatus::Undefined))
    }
    fn know(&self, a: &Self::Value) -> Self::Value {
        let f = &self.0.frame;
        self.pointwise(a, |w| iter_points(f.successors(w)).all(|v| a[v] == TruthStatus::True))
    }
}

/// `(V, L)` read off a status vector.
pub fn statuses_to_pair(s: &[TruthStatus]) -> SubsetPair {
    let mut out = SubsetPair { truth: 0, domain: 0 };
    for (w, st) in s.iter().enumerate() {
        match st {
            TruthStatus::True => {
                out.truth |= 1 << w;
                out.domain |= 1 << w;
            }
            TruthStatus::False => out.domain |= 1 << w,
            TruthStatus::Undefined => {}
        }
    }
    out
}

/// Two worlds `w0 ≥ w1`, `R = {(w0,w1), (w1,w1)}`, `L(p) = V(p) = {w0}`.
/// `p ∨ ¬p` is valid but `K(p ∨ ¬p)` is false at `w0`, where it is defined.
pub fn necessitation_counterexample() -> (AwarenessModel, Formula) {
    let frame = AwarenessFrame::new(vec!["w0".into(), "w1".into()], &[(0, 1)], &[(0, 1), (1, 1)])
        .expect("static frame");
    let props = BTreeMap::from([(Prop::new("p"), (0b01, 0b01))]);
    let p = Formula::prop("p");
    (AwarenessModel::new(frame, props), Formula::or(p.clone(), Formula::neg(p)))
}

/// Searches for a bijection of worlds preserving `≥`, `R`, `L` and `V`
/// (propositions matched by name).
pub fn find_model_isomorphism(a: &AwarenessModel, b: &AwarenessModel) -> Option<Vec<usize>> {
    let n = a.frame.len();
    if n != b.frame.len() || a.props.keys().ne(b.props.keys()) {
        return None;
    }
    let sig = |m: &AwarenessModel, w: usize| {
        let f = &m.frame;
        let props: Vec<(bool, bool)> = m.props.values().map(|&(l, v)| (l >> w & 1 == 1, v >> w & 1 == 1)).collect();
        (f.up[w].count_ones(), (0..f.len()).filter(|&v| f.geq(w, v)).count(), f.access[w].count_ones(), f.related(w, w), props)
    };
    let sa: Vec<_> = (0..n).map(|w| sig(a, w)).collect();
    let sb: Vec<_> = (0..n).map(|w| sig(b, w)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn ok(a: &AwarenessModel, b: &AwarenessModel, map: &[usize], w: usize) -> bool {
        (0..=w).all(|v| {
            let (fw, fv) = (map[w], map[v]);
            a.frame.geq(w, v) == b.frame.geq(fw, fv)
                && a.frame.geq(v, w) == b.frame.geq(fv, fw)
                && a.frame.related(w, v) == b.frame.related(fw, fv)
                && a.frame.related(v, w) == b.frame.related(fv, fw)
        })
    }

    fn go<S: PartialEq>(
        a: &AwarenessModel,
        b: &AwarenessModel,
        sa: &[S],
        sb: &[S],
        w: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if w == map.len() {
            return true;
        }
        for c in 0..map.len() {
            if used[c] || sa[w] != sb[c] {
                continue;
            }
            map[w] = c;
            used[c] = true;
            if ok(a, b, map, w) && go(a, b, sa, sb, w + 1, map, used) {
                return true;
            }
            used[c] = false;
        }
        map[w] = usize::MAX;
        false
    }

    go(a, b, &sa, &sb, 0, &mut map, &mut used).then_some(map)
}

/// How [`random_model`] draws the accessibility relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccessShape {
    Partition,
    Arbitrary,
}

/// A random model with between 1 and `max_worlds` worlds over `props`.
///
/// The order is the closure of random generator pairs, each `L(p)` is the
/// upward closure of a random set of worlds and `V(p)` a uniform subset of
/// `L(p)`.
pub fn random_model<R: Rng>(rng: &mut R, max_worlds: usize, props: &[Prop], shape: AccessShape) -> AwarenessModel {
    let n = rng.gen_range(1..=max_worlds.clamp(1, MAX_POINTS));
    let worlds: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    let mut geq = Vec::new();
    for w in 0..n {
        for v in 0..n {
            if w != v && rng.gen_bool(0.25) {
                geq.push((w, v));
            }
        }
    }
    let mut access = Vec::new();
    match shape {
        AccessShape::Partition => {
            let cells: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            for w in 0..n {
                for v in 0..n {
                    if cells[w] == cells[v] {
                        access.push((w, v));
                    }
                }
            }
        }
        AccessShape::Arbitrary => {
            for w in 0..n {
                let mut any = false;
                for v in 0..n {
                    if rng.gen_bool(0.4) {
                        access.push((w, v));
                        any = true;
                    }
                }
                if !any {
                    access.push((w, rng.gen_range(0..n)));
                }
            }
        }
    }
    let frame = AwarenessFrame::new(worlds, &geq, &access).expect("generated frame is in range");
    let mut map = BTreeMap::new();
    for p in props {
        let seeds: WorldSet = (0..n).filter(|_| rng.gen_bool(0.4)).fold(0, |m, w| m | 1 << w);
        let l = frame.up_closure(seeds);
        let v = iter_points(l).filter(|_| rng.gen_bool(0.5)).fold(0, |m, w| m | 1 << w);
        map.insert(p.clone(), (l, v));
    }
    AwarenessModel::new(frame, map)
}

/// Every reflexive and transitive relation on `n` points, as `up` rows.
pub fn all_preorders(n: usize) -> Vec<Vec<WorldSet>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|w| (0..n).map(move |v| (w, v))).filter(|(w, v)| w != v).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut up: Vec<WorldSet> = (0..n).map(|w| 1 << w).collect();
        for (i, &(w, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                up[v] |= 1 << w;
            }
        }
        if close_preorder(n, up.clone()) == up {
            out.push(up);
        }
    }
    out
}

/// Every serial relation on `n` points, as successor rows.
pub fn all_serial_relations(n: usize) -> Vec<Vec<WorldSet>> {
    let rows = 1u64 << n;
    let mut out = Vec::new();
    let total = (rows - 1).pow(n as u32);
    for mut code in 0..total {
        let mut r = Vec::with_capacity(n);
        for _ in 0..n {
            r.push((code % (rows - 1) + 1) as WorldSet);
            code /= rows - 1;
        }
        out.push(r);
    }
    out
}

/// Every frame on `n` worlds named `w0, w1, ...`.
pub fn all_frames(n: usize) -> Vec<AwarenessFrame> {
    let worlds: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    let orders = all_preorders(n);
    let rels = all_serial_relations(n);
    let mut out = Vec::with_capacity(orders.len() * rels.len());
    for up in &orders {
        for r in &rels {
            out.push(AwarenessFrame::from_rows(worlds.clone(), up.clone(), r.clone()).expect("in range"));
        }
    }
    out
}

/// Pairs `(A, B)` with `A ⊆ B` and `B` upward closed: the possible
/// extensions of a formula on this frame.
pub fn admissible_pairs(frame: &AwarenessFrame) -> Vec<SubsetPair> {
    let mut out = Vec::new();
    for b in 0..=frame.all() {
        if !frame.is_upward_closed(b) {
            continue;
        }
        let mut a: WorldSet = 0;
        loop {
            out.push(SubsetPair { truth: a, domain: b });
            if a == b {
                break;
            }
            a = a.wrapping_sub(b) & b;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn two_world() -> AwarenessModel {
        // w1 ≥ w0; p defined at both, true at w1; q defined at w1 only.
        let frame = AwarenessFrame::new(vec!["w0".into(), "w1".into()], &[(1, 0)], &[(0, 1), (1, 1)]).unwrap();
        let props = BTreeMap::from([(Prop::new("p"), (0b11, 0b10)), (Prop::new("q"), (0b10, 0b10))]);
        AwarenessModel::new(frame, props)
    }

    #[test]
    fn truth_examples() {
        let m = two_world();
        assert!(m.check().passed());
        assert_eq!(m.truth(1, &p("p")), TruthStatus::True);
        assert_eq!(m.truth(0, &p("p")), TruthStatus::False);
        assert_eq!(m.truth(0, &p("q")), TruthStatus::Undefined);
        assert_eq!(m.truth(0, &p("K p")), TruthStatus::True);
        assert_eq!(m.truth(0, &p("A q")), TruthStatus::Undefined);
        assert_eq!(m.truth(1, &p("A q")), TruthStatus::True);
        assert!(m.in_language(0, &p("1")));
        assert_eq!(m.extension(&p("1")), SubsetPair { truth: 0b11, domain: 0b11 });
        assert_eq!(m.extension(&p("~p")), SubsetPair { truth: 0b01, domain: 0b11 });
    }

    #[test]
    fn fast_semantics_matches_truth() {
        let m = two_world();
        for s in ["p", "~p & q", "K p", "A q -> K q", "K ~K p", "A (p & q)", "K 0", "~K 0"] {
            let f = p(s);
            assert_eq!(eval(&ModelSemantics(&m), &f).unwrap(), m.extension(&f), "{s}");
            assert_eq!(statuses_to_pair(&eval(&TruthSemantics(&m), &f).unwrap()), m.extension(&f), "{s}");
        }
    }

    #[test]
    fn model_violations() {
        let frame = AwarenessFrame::new(vec!["a".into(), "b".into()], &[(1, 0)], &[(0, 0)]).unwrap();
        let bad = AwarenessModel::new(frame, BTreeMap::from([(Prop::new("p"), (0b01, 0b10))]));
        let r = bad.check();
        assert!(r.violates(Law::Serial));
        assert!(r.violates(Law::ValInLang));
        assert!(r.violates(Law::LangUpward));
        let raw = AwarenessFrame::from_rows(vec!["a".into()], vec![0], vec![1]).unwrap();
        assert!(AwarenessModel::new(raw, BTreeMap::new()).check().violates(Law::PreorderReflexive));
    }

    #[test]
    fn necessitation_fails() {
        let (m, phi) = necessitation_counterexample();
        assert!(m.check().passed());
        assert!(m.valid(&phi));
        assert!(!m.valid(&Formula::know(phi.clone())));
        assert_eq!(m.truth(0, &Formula::know(phi)), TruthStatus::False);
    }

    #[test]
    fn frame_properties() {
        let f = AwarenessFrame::new(vec!["a".into(), "b".into()], &[], &[(0, 1), (1, 0)]).unwrap();
        assert!(!f.property(FrameProperty::Reflexive));
        assert!(!f.property(FrameProperty::Transitive));
        assert!(f.property(FrameProperty::Serial));
        let part = AwarenessFrame::new(vec!["a".into(), "b".into()], &[], &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        for prop in [FrameProperty::Reflexive, FrameProperty::Transitive, FrameProperty::Euclidean, FrameProperty::KaCond] {
            assert!(part.property(prop));
        }
        assert!(!part.property(FrameProperty::NecCond));
    }

    #[test]
    fn frame_counts() {
        assert_eq!(all_preorders(2).len(), 4);
        assert_eq!(all_preorders(3).len(), 29);
        assert_eq!(all_serial_relations(2).len(), 9);
        assert_eq!(all_serial_relations(3).len(), 343);
    }

    #[test]
    fn isomorphism_detects_relabelling() {
        let m = two_world();
        let frame = AwarenessFrame::new(vec!["x".into(), "y".into()], &[(0, 1)], &[(1, 0), (0, 0)]).unwrap();
        let props = BTreeMap::from([(Prop::new("p"), (0b11, 0b01)), (Prop::new("q"), (0b01, 0b01))]);
        let n = AwarenessModel::new(frame, props);
        assert_eq!(find_model_isomorphism(&m, &n), Some(vec![1, 0]));
        let mut other = n.clone();
        other.props.insert(Prop::new("q"), (0b01, 0));
        assert!(find_model_isomorphism(&m, &other).is_none());
    }
}
