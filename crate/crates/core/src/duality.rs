//! The two translations between awareness models and modal RBAs, and checks
//! that each preserves the meaning of every formula in a battery.
//!
//! Model to algebra: the concrete algebra over the worlds with
//! `f^{K,R}(A, B) = ({ω | R(ω) ⊆ A} ∩ B, B)` and `h(p) = (V(p), L(p))`.
//!
//! Algebra to model: worlds are the members of `F^RB`, `u ≥ v` iff
//! `π₂(u) ⊇ π₂(v)`, `u R v` iff `f^K(X) ∈ u` implies `X ∈ v` for every `X`,
//! `L(p) = {u | 1_{h(p)} ∈ u}` and `V(p) = {u | h(p) ∈ u}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::ElementId;
use crate::concrete::{materialize_with_cap, ConcreteRba, PointSet, SubsetPair, Universe, MAX_POINTS};
use crate::error::{Error, Result};
use crate::filters::{enumerate_frb, project_domains, Filter};
use crate::frames::{statuses_to_pair, AwarenessFrame, AwarenessModel, TruthSemantics, TruthStatus};
use crate::modal::{check_mrba, Assignment, Mrba, MrbaSemantics};
use crate::syntax::{class_closure, eval, ClosureOptions, Formula, Pair, Prop, Semantics};

/// Largest model translated into its concrete algebra (`3^|W|` elements).
pub const DEFAULT_DUAL_WORLDS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    #[serde(rename = "model->mrba")]
    ModelToMrba,
    #[serde(rename = "mrba->model")]
    MrbaToModel,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::ModelToMrba => "model->mrba",
            Direction::MrbaToModel => "mrba->model",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub formula: String,
    pub algebra: String,
    pub model: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub direction: Direction,
    /// Formulas compared; for a class battery, one representative per class.
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for DualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} checked, {} mismatches", self.direction, self.checked, self.mismatches.len())?;
        for m in &self.mismatches {
            writeln!(f, "  {}: algebra {} vs model {}", m.formula, m.algebra, m.model)?;
        }
        Ok(())
    }
}

/// Formulas to compare. A closure battery covers every formula over the
/// given propositions within the connective budget and modal depth, one
/// representative per class of jointly equal values.
#[derive(Debug, Clone)]
pub enum Battery {
    Formulas(Vec<Formula>),
    Closure { props: Vec<Prop>, budget: usize, depth: usize },
}

impl Battery {
    pub fn closure(props: &[Prop], budget: usize, depth: usize) -> Self {
        Battery::Closure { props: props.to_vec(), budget, depth }
    }

    /// Parses `depth=2,budget=6`; missing keys take those defaults.
    pub fn parse_spec(text: &str, props: &[Prop]) -> Result<Self> {
        let (mut depth, mut budget) = (2, 6);
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("battery item `{item}` is not key=value")))?;
            let v: usize = v.trim().parse().map_err(|_| Error::Input(format!("battery value `{v}` is not a number")))?;
            match k.trim() {
                "depth" => depth = v,
                "budget" => budget = v,
                other => return Err(Error::Input(format!("unknown battery key `{other}`"))),
            }
        }
        Ok(Battery::closure(props, budget, depth))
    }

    /// Pairs `(formula, value)` with the value computed by `sem`.
    fn run<S: Semantics>(&self, sem: &S) -> Result<Vec<(Formula, S::Value)>> {
        match self {
            Battery::Formulas(fs) => fs.iter().map(|f| Ok((f.clone(), eval(sem, f)?))).collect(),
            Battery::Closure { props, budget, depth } => Ok(class_closure(sem, props, ClosureOptions::modal(*budget, *depth))?
                .into_iter()
                .map(|c| (c.rep, c.value))
                .collect()),
        }
    }
}

/// The concrete modal algebra of a model, its assignment `h^M` and the
/// concrete algebra that names its elements.
#[derive(Debug, Clone)]
pub struct ModelDual {
    pub mrba: Mrba,
    pub assignment: Assignment,
    pub concrete: ConcreteRba,
}

fn require_model(m: &AwarenessModel) -> Result<()> {
    let r = m.check();
    if r.passed() {
        Ok(())
    } else {
        Err(Error::Model(r.to_string()))
    }
}

pub fn model_to_mrba(m: &AwarenessModel) -> Result<ModelDual> {
    model_to_mrba_with_cap(m, DEFAULT_DUAL_WORLDS)
}

pub fn model_to_mrba_with_cap(m: &AwarenessModel, max_worlds: usize) -> Result<ModelDual> {
    require_model(m)?;
    let universe = Universe::new(m.frame.worlds().iter().cloned())?;
    let concrete = materialize_with_cap(&universe, max_worlds)?;
    let fk = concrete
        .pairs
        .iter()
        .map(|&SubsetPair { truth, domain }| {
            let k = SubsetPair { truth: m.frame.box_of(truth) & domain, domain };
            concrete.element(k).expect("box of a pair is a pair")
        })
        .collect();
    let mrba = Mrba::new(concrete.algebra.clone(), fk)?;
    let mut assignment = Assignment::default();
    for (p, l, v) in m.entries() {
        let x = concrete
            .element(SubsetPair { truth: v, domain: l })
            .ok_or_else(|| Error::Model(format!("V({p}) is not contained in L({p})")))?;
        assignment.insert(p.clone(), x);
    }
    Ok(ModelDual { mrba, assignment, concrete })
}

fn show_statuses(m: &AwarenessModel, s: &[TruthStatus]) -> String {
    let p = statuses_to_pair(s);
    format!("({},{})", m.frame.format_set(p.truth), m.frame.format_set(p.domain))
}

/// `h^{M+}(φ) = (V(φ), L(φ))` on the battery. The right side comes from the
/// truth clauses, not from the concrete operations.
pub fn verify_prop1(m: &AwarenessModel, battery: &Battery) -> Result<DualityReport> {
    let dual = model_to_mrba(m)?;
    verify_prop1_with(m, &dual, battery)
}

pub fn verify_prop1_with(m: &AwarenessModel, dual: &ModelDual, battery: &Battery) -> Result<DualityReport> {
    let alg = MrbaSemantics { mrba: &dual.mrba, assignment: &dual.assignment };
    let sem = Pair(alg, TruthSemantics(m));
    let rows = battery.run(&sem)?;
    let mut mismatches = Vec::new();
    for (f, (x, s)) in &rows {
        if dual.concrete.pair(*x) != statuses_to_pair(s) {
            mismatches.push(Mismatch {
                formula: f.to_string(),
                algebra: dual.mrba.algebra.label(*x).to_string(),
                model: show_statuses(m, s),
            });
        }
    }
    Ok(DualityReport { direction: Direction::ModelToMrba, checked: rows.len(), mismatches })
}

/// The dual model together with the filters behind its worlds.
#[derive(Debug, Clone)]
pub struct MrbaDual {
    pub model: AwarenessModel,
    pub filters: Vec<Filter>,
}

fn require_mrba(m: &Mrba) -> Result<()> {
    let r = check_mrba(m);
    if r.passed() {
        Ok(())
    } else {
        Err(Error::Mrba(r.to_string()))
    }
}

fn members(filters: &[Filter], x: ElementId) -> PointSet {
    filters.iter().enumerate().filter(|(_, u)| u.contains(x)).fold(0, |m, (i, _)| m | 1 << i)
}

/// `u R v` iff `f^K(X) ∈ u ⇒ X ∈ v` for all `X`.
fn accessibility(m: &Mrba, filters: &[Filter]) -> Vec<PointSet> {
    filters
        .iter()
        .map(|u| {
            filters
                .iter()
                .enumerate()
                .filter(|(_, v)| m.algebra.elements().all(|x| !u.contains(m.fk(x)) || v.contains(x)))
                .fold(0, |s, (i, _)| s | 1 << i)
        })
        .collect()
}

fn world_names(m: &Mrba, filters: &[Filter]) -> Vec<String> {
    filters
        .iter()
        .enumerate()
        .map(|(i, u)| match u.generator(&m.algebra) {
            Some(g) => format!("^{}", m.algebra.label(g)),
            None => format!("u{i}"),
        })
        .collect()
}

/// Builds the dual model. The result is checked, so a non-serial `R^RB`
/// surfaces as an error rather than a malformed model.
pub fn mrba_to_model(m: &Mrba, h: &Assignment) -> Result<MrbaDual> {
    require_mrba(m)?;
    let alg = &m.algebra;
    let filters = enumerate_frb(alg)?.filters;
    if filters.len() > MAX_POINTS {
        return Err(Error::CapExceeded { what: "F^RB worlds", needed: filters.len(), cap: MAX_POINTS });
    }
    let domains: Vec<Vec<ElementId>> = filters.iter().map(|u| project_domains(alg, u)).collect();
    let up: Vec<PointSet> = (0..filters.len())
        .map(|v| {
            (0..filters.len())
                .filter(|&u| domains[v].iter().all(|x| domains[u].contains(x)))
                .fold(0, |s, u| s | 1 << u)
        })
        .collect();
    let frame = AwarenessFrame::from_rows(world_names(m, &filters), up, accessibility(m, &filters))?;
    let mut props = BTreeMap::new();
    for (p, &x) in &h.0 {
        props.insert(p.clone(), (members(&filters, alg.relative_top(x)), members(&filters, x)));
    }
    let model = AwarenessModel::new(frame, props);
    require_model(&model).map_err(|e| Error::Verification(format!("dual model is ill-formed: {e}")))?;
    Ok(MrbaDual { model, filters })
}

/// `V^h(φ) = {u | h⁺(φ) ∈ u}` and `L^h(φ) = {u | 1_{h⁺(φ)} ∈ u}` on the
/// battery, with the model side from the truth clauses.
pub fn verify_prop2(m: &Mrba, h: &Assignment, battery: &Battery) -> Result<DualityReport> {
    let dual = mrba_to_model(m, h)?;
    verify_prop2_with(m, h, &dual, battery)
}

pub fn verify_prop2_with(m: &Mrba, h: &Assignment, dual: &MrbaDual, battery: &Battery) -> Result<DualityReport> {
    let sem = Pair(MrbaSemantics { mrba: m, assignment: h }, TruthSemantics(&dual.model));
    let rows = battery.run(&sem)?;
    let mut mismatches = Vec::new();
    for (f, (x, s)) in &rows {
        let expected = SubsetPair {
            truth: members(&dual.filters, *x),
            domain: members(&dual.filters, m.algebra.relative_top(*x)),
        };
        if expected != statuses_to_pair(s) {
            mismatches.push(Mismatch {
                formula: f.to_string(),
                algebra: format!(
                    "{} = ({},{})",
                    m.algebra.label(*x),
                    dual.model.frame.format_set(expected.truth),
                    dual.model.frame.format_set(expected.domain)
                ),
                model: show_statuses(&dual.model, s),
            });
        }
    }
    Ok(DualityReport { direction: Direction::MrbaToModel, checked: rows.len(), mismatches })
}

/// `R(u) ⊆ {v | x ∈ v}` iff `f^K(x) ∈ u`, at every `u ∈ F^RB`.
pub fn check_lemma3(m: &Mrba, x: ElementId) -> Result<bool> {
    let filters = enumerate_frb(&m.algebra)?.filters;
    let r = accessibility(m, &filters);
    let holds_x = members(&filters, x);
    Ok(filters.iter().zip(&r).all(|(u, &succ)| (succ & !holds_x == 0) == u.contains(m.fk(x))))
}

/// Validity agreement for one assignment: on every battery formula,
/// `h⁺(φ)` is a relative top iff `φ` is valid in the dual model. Returns the
/// disagreeing formulas.
pub fn validity_agreement(m: &Mrba, h: &Assignment, dual: &MrbaDual, battery: &Battery) -> Result<(usize, Vec<Formula>)> {
    let sem = Pair(MrbaSemantics { mrba: m, assignment: h }, TruthSemantics(&dual.model));
    let rows = battery.run(&sem)?;
    let bad = rows
        .iter()
        .filter(|(_, (x, s))| {
            let algebraic = m.algebra.is_relative_top(*x);
            let p = statuses_to_pair(s);
            algebraic != (p.truth == p.domain)
        })
        .map(|(f, _)| f.clone())
        .collect();
    Ok((rows.len(), bad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::frames::necessitation_counterexample;
    use crate::syntax::parse;

    #[test]
    fn one_world_dual_is_identity() {
        let frame = AwarenessFrame::new(vec!["w".into()], &[], &[(0, 0)]).unwrap();
        let m = AwarenessModel::new(frame, BTreeMap::new());
        let d = model_to_mrba(&m).unwrap();
        assert_eq!(d.mrba.algebra.size(), 3);
        assert!(d.mrba.algebra.elements().all(|x| d.mrba.fk(x) == x));
    }

    #[test]
    fn total_relation_box() {
        let frame = AwarenessFrame::new(vec!["a".into(), "b".into()], &[], &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let m = AwarenessModel::new(frame, BTreeMap::new());
        let d = model_to_mrba(&m).unwrap();
        for x in d.mrba.algebra.elements() {
            let p = d.concrete.pair(x);
            let k = d.concrete.pair(d.mrba.fk(x));
            let expected = if p.truth == 0b11 { p.domain } else { 0 };
            assert_eq!(k, SubsetPair { truth: expected, domain: p.domain });
        }
    }

    #[test]
    fn prop1_on_small_model() {
        let (m, _) = necessitation_counterexample();
        let report = verify_prop1(&m, &Battery::closure(&[Prop::new("p")], 4, 2)).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.checked > 5);
    }

    #[test]
    fn identity_operator_gives_reflexive_frame() {
        let m = Mrba::identity(Algebra::powerset(&["a", "b"]));
        let h = Assignment::parse(&m.algebra, "p=a").unwrap();
        let d = mrba_to_model(&m, &h).unwrap();
        assert_eq!(d.model.frame.len(), 2);
        for w in 0..2 {
            assert_eq!(d.model.frame.successors(w), 1 << w);
        }
        let battery = Battery::Formulas(vec![parse("K p").unwrap(), parse("A p -> p").unwrap()]);
        assert!(verify_prop2(&m, &h, &battery).unwrap().passed());
        for x in m.algebra.elements() {
            assert!(check_lemma3(&m, x).unwrap());
        }
    }

    #[test]
    fn battery_spec_parsing() {
        let props = [Prop::new("p")];
        assert!(matches!(
            Battery::parse_spec("depth=1, budget=3", &props).unwrap(),
            Battery::Closure { budget: 3, depth: 1, .. }
        ));
        assert!(Battery::parse_spec("size=3", &props).is_err());
    }
}
