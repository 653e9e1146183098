//! Verification batteries over the built-in fixtures and seeded random
//! corpora. Each suite returns an [`Outcome`] with one line per sub-check;
//! the CLI prints them and the acceptance tests assert on them.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, ElementId};
use crate::concrete::{c_join, c_meet, c_neg, materialize, SubsetPair, Universe};
use crate::duality::{
    model_to_mrba, mrba_to_model, validity_agreement, verify_prop1, verify_prop2_with, Battery, DualityReport,
};
use crate::error::Result;
use crate::filters::{
    enumerate, enumerate_filters, enumerate_filters_brute, extend_filter, is_filter, is_frb, is_strongly_proper,
    one_step_closure, project_domains, stone_embed, FilterKind, DEFAULT_CANDIDATE_CAP,
};
use crate::fixtures::{self, algebra_corpus, example_assignment};
use crate::frames::{
    admissible_pairs, all_frames, all_preorders, all_serial_relations, find_model_isomorphism,
    necessitation_counterexample, random_model, AccessShape, AwarenessFrame, AwarenessModel, FrameProperty,
    ModelSemantics,
};
use crate::glue::random_glued;
use crate::modal::{all_assignments, Assignment, AssignmentLanes, Mrba};
use crate::syntax::{
    class_closure, classical_tautology, enumerate_formulas, eval, instantiate, nec_ak, Bound, ClassicalSemantics,
    ClosureOptions, Formula, Lanes, Pair, Prop, SchemaId, Semantics, METAVAR_PHI, METAVAR_PSI,
};

#[derive(Debug, Clone, Serialize)]
pub struct Line {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Outcome {
    pub lines: Vec<Line>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.lines.push(Line { name: name.into(), passed, detail: detail.into() });
    }

    pub fn extend(&mut self, other: Outcome) {
        self.lines.extend(other.lines);
    }

    /// The failing lines, one per row.
    pub fn failures(&self) -> String {
        self.lines.iter().filter(|l| !l.passed).map(|l| format!("{}: {}", l.name, l.detail)).collect::<Vec<_>>().join("\n")
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "[{}] {}: {}", if l.passed { "pass" } else { "FAIL" }, l.name, l.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Single-entry mutations of the `example1` fixture.
    pub mutations: usize,
    /// Random glued algebras for the order-lemma sweep, and their size cap.
    pub random_algebras: usize,
    pub random_algebra_size: usize,
    /// Random models for the soundness sweep, and their world cap.
    pub random_models: usize,
    pub max_worlds: usize,
    pub soundness_budget: usize,
    pub soundness_depth: usize,
    pub classical_budget: usize,
    pub duality_budget: usize,
    pub duality_depth: usize,
    /// Largest frame size for the exhaustive correspondence sweep.
    pub frame_worlds: usize,
    /// Assignment sweeps larger than this fall back to seeded samples.
    pub max_assignments: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            mutations: 20,
            random_algebras: 50,
            random_algebra_size: 20,
            random_models: 100,
            max_worlds: 4,
            soundness_budget: 5,
            soundness_depth: 2,
            classical_budget: 7,
            duality_budget: 6,
            duality_depth: 2,
            frame_worlds: 3,
            max_assignments: 4096,
        }
    }
}

fn pq() -> Vec<Prop> {
    vec![Prop::new("p"), Prop::new("q")]
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn glued_corpus(cfg: &SuiteConfig) -> Vec<(String, Algebra)> {
    let mut r = rng(cfg.seed, 3);
    (0..cfg.random_algebras)
        .map(|i| (format!("glued#{i}"), random_glued(&mut r, cfg.random_algebra_size)))
        .collect()
}

/// One randomly chosen table entry replaced by a different element.
pub fn mutate<R: Rng>(alg: &Algebra, rng: &mut R) -> (Algebra, String) {
    let n = alg.size() as u32;
    let a = ElementId(rng.gen_range(0..n));
    let b = ElementId(rng.gen_range(0..n));
    let table = rng.gen_range(0..3);
    let old = match table {
        0 => alg.meet(a, b),
        1 => alg.join(a, b),
        _ => alg.neg(a),
    };
    let value = ElementId((old.0 + rng.gen_range(1..n)) % n);
    let (l, v) = (alg.label(a), alg.label(value));
    match table {
        0 => (alg.with_meet_entry(a, b, value), format!("{l} ∧ {} := {v}", alg.label(b))),
        1 => (alg.with_join_entry(a, b, value), format!("{l} ∨ {} := {v}", alg.label(b))),
        _ => (alg.with_neg_entry(a, value), format!("¬{l} := {v}")),
    }
}

/// The algebra laws on the fixtures and detection of seeded mutations.
pub fn rba_axioms(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (name, alg) in algebra_corpus()? {
        let r = alg.check_rba();
        out.push(format!("rb1-rb5 {name}"), r.passed(), format!("{} elements, {} violations", alg.size(), r.violations.len()));
    }
    let ex1 = fixtures::example1()?;
    let mut r = rng(cfg.seed, 1);
    let mut missed = Vec::new();
    let mut laws = BTreeMap::new();
    for _ in 0..cfg.mutations {
        let (m, what) = mutate(&ex1, &mut r);
        let report = m.check_rba();
        match report.violations.first() {
            Some(v) => *laws.entry(v.law.id()).or_insert(0) += 1,
            None => missed.push(what),
        }
    }
    let first_laws = laws.iter().map(|(k, v)| format!("{k}×{v}")).collect::<Vec<_>>().join(" ");
    out.push(
        "mutations of example1 detected",
        missed.is_empty(),
        if missed.is_empty() { format!("{} of {} (first law: {first_laws})", cfg.mutations, cfg.mutations) } else { format!("undetected: {}", missed.join("; ")) },
    );
    Ok(out)
}

/// Every domain is Boolean and every projection is a homomorphism.
pub fn local_boolean(_cfg: &SuiteConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (name, alg) in algebra_corpus()? {
        let mut bad = Vec::new();
        let mut checked = 0usize;
        for x in alg.elements() {
            let local = alg.extract_local_boolean(x)?;
            let r = local.algebra.check_boolean();
            if !r.passed() {
                bad.push(format!("π₁({}) not Boolean", alg.label(x)));
            }
            let tx = alg.relative_top(x);
            let pre: Vec<ElementId> = alg.elements().filter(|&y| alg.leq(tx, alg.relative_top(y))).collect();
            for &y in &pre {
                let hy = alg.project(x, y)?;
                if alg.relative_top(hy) != tx {
                    bad.push(format!("h_{}({}) leaves π₁", alg.label(x), alg.label(y)));
                }
                if alg.project(x, alg.neg(y))? != alg.neg(hy) {
                    bad.push(format!("h_{} ¬ at {}", alg.label(x), alg.label(y)));
                }
                for &z in &pre {
                    let hz = alg.project(x, z)?;
                    checked += 1;
                    if alg.project(x, alg.meet(y, z))? != alg.meet(hy, hz) {
                        bad.push(format!("h_{} ∧ at ({}, {})", alg.label(x), alg.label(y), alg.label(z)));
                    }
                    if alg.project(x, alg.join(y, z))? != alg.join(hy, hz) {
                        bad.push(format!("h_{} ∨ at ({}, {})", alg.label(x), alg.label(y), alg.label(z)));
                    }
                }
            }
        }
        bad.truncate(8);
        out.push(
            format!("domains and projections {name}"),
            bad.is_empty(),
            if bad.is_empty() { format!("{} domains, {checked} projected pairs", alg.size()) } else { bad.join("; ") },
        );
    }
    Ok(out)
}

/// Witnesses against the five clauses of the order lemma.
pub fn order_violations(alg: &Algebra) -> Vec<String> {
    let mut bad = Vec::new();
    let l = |x: ElementId| alg.label(x).to_string();
    let t = |x: ElementId| alg.relative_top(x);
    for x in alg.elements() {
        if !alg.leq(x, x) {
            bad.push(format!("(i) {} ≥ itself", l(x)));
        }
        for y in alg.elements() {
            let ge = alg.leq(y, x); // x ≥ y
            for z in alg.elements() {
                if ge && alg.leq(z, y) && !alg.leq(z, x) {
                    bad.push(format!("(i) transitivity at {}, {}, {}", l(x), l(y), l(z)));
                }
                // (ii) with x' = z
                if ge && alg.leq(y, z) && (!alg.leq(y, alg.meet(x, z)) || !alg.leq(y, alg.join(x, z))) {
                    bad.push(format!("(ii) at {}, {} over {}", l(x), l(z), l(y)));
                }
            }
            if ge && (!alg.leq(t(y), t(x)) || alg.meet(x, alg.relative_bottom(y)) != alg.relative_bottom(y)) {
                bad.push(format!("(iii) at {} ≥ {}", l(x), l(y)));
            }
            if alg.leq(t(y), t(x)) && t(alg.meet(x, t(y))) != t(y) {
                bad.push(format!("(iv) at {}, {}", l(x), l(y)));
            }
            let m = alg.meet(t(x), t(y));
            if t(alg.meet(x, y)) != m || t(alg.join(x, y)) != m || alg.join(t(x), t(y)) != m {
                bad.push(format!("(v) at {}, {}", l(x), l(y)));
            }
        }
    }
    bad
}

pub fn order_lemma(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut corpus = algebra_corpus()?;
    corpus.extend(glued_corpus(cfg));
    let results: Vec<(String, usize, Vec<String>)> = corpus
        .par_iter()
        .map(|(name, alg)| (name.clone(), alg.size(), order_violations(alg)))
        .collect();
    let largest = results.iter().map(|r| r.1).max().unwrap_or(0);
    let bad: Vec<String> = results
        .iter()
        .filter(|r| !r.2.is_empty())
        .map(|(n, _, v)| format!("{n}: {}", v.iter().take(3).cloned().collect::<Vec<_>>().join("; ")))
        .collect();
    out.push(
        "order lemma (i)-(v)",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} algebras ({} random glued, largest {largest} elements), 0 violations", corpus.len(), cfg.random_algebras)
        } else {
            bad.join(" | ")
        },
    );
    Ok(out)
}

/// The `example1` generators as pairs over `{x, y, z}`, the reference
/// picture of its embedding restricted to three points.
pub fn pictured_pairs(u: &Universe) -> Result<Vec<(&'static str, SubsetPair)>> {
    Ok(vec![
        ("X_B", u.parse_pair("({x},{x,y,z})")?),
        ("Y_B", u.parse_pair("({y},{x,y,z})")?),
        ("Z_B", u.parse_pair("({z},{x,y,z})")?),
        ("X_R", u.parse_pair("({x},{x,y})")?),
        ("Y_R", u.parse_pair("({y},{x,y})")?),
    ])
}

/// Extends `gens` (element ↦ pair) along the operations. Succeeds when the
/// generated map is a well-defined bijection onto a subalgebra of pairs
/// that commutes with `¬`, `∧`, `∨`.
pub fn extend_to_pairs(alg: &Algebra, gens: &[(ElementId, SubsetPair)], full: SubsetPair) -> std::result::Result<Vec<SubsetPair>, String> {
    let mut map: HashMap<ElementId, SubsetPair> = HashMap::new();
    let mut frontier: Vec<(ElementId, SubsetPair)> = gens.to_vec();
    frontier.push((alg.top(), full));
    while let Some((x, p)) = frontier.pop() {
        match map.get(&x) {
            Some(&q) if q == p => continue,
            Some(&q) => return Err(format!("{} is sent to two pairs {q:?} and {p:?}", alg.label(x))),
            None => {}
        }
        map.insert(x, p);
        frontier.push((alg.neg(x), c_neg(p)));
        let known: Vec<(ElementId, SubsetPair)> = map.iter().map(|(&a, &b)| (a, b)).collect();
        for (y, q) in known {
            frontier.push((alg.meet(x, y), c_meet(p, q)));
            frontier.push((alg.join(x, y), c_join(p, q)));
        }
    }
    if map.len() != alg.size() {
        return Err(format!("generators reach {} of {} elements", map.len(), alg.size()));
    }
    let image: HashSet<SubsetPair> = map.values().copied().collect();
    if image.len() != alg.size() {
        return Err("the generated map is not injective".into());
    }
    Ok(alg.elements().map(|x| map[&x]).collect())
}

/// Injections of `{x, y, z}` into the points of `image` under which every
/// listed pair is the restriction of the image of its element.
pub fn pictured_injections(alg: &Algebra, image: &[SubsetPair], points: usize) -> Result<Vec<[usize; 3]>> {
    let u = Universe::parse("W = {x,y,z}")?;
    let targets = pictured_pairs(&u)?;
    let mut out = Vec::new();
    for a in 0..points {
        for b in 0..points {
            for c in 0..points {
                if a == b || b == c || a == c {
                    continue;
                }
                let pull = |s: u128| -> u128 { [a, b, c].iter().enumerate().filter(|(_, &pt)| s >> pt & 1 == 1).fold(0, |m, (i, _)| m | 1 << i) };
                let ok = targets.iter().all(|(name, pair)| {
                    let x = alg.find(name).expect("example-1 names");
                    let img = image[x.index()];
                    SubsetPair { truth: pull(img.truth), domain: pull(img.domain) } == *pair
                });
                if ok {
                    out.push([a, b, c]);
                }
            }
        }
    }
    Ok(out)
}

/// The embedding into pairs of `F^RB` on every fixture, plus the `example1`
/// comparisons.
pub fn stone(_cfg: &SuiteConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (name, alg) in algebra_corpus()? {
        let e = stone_embed(&alg)?;
        out.push(
            format!("embedding {name}"),
            e.report.passed(),
            format!(
                "{} points, injective={}, ¬/∧/∨ failures {}/{}/{}",
                e.points.len(),
                e.report.injective,
                e.report.neg_failures.len(),
                e.report.meet_failures.len(),
                e.report.join_failures.len()
            ),
        );
    }
    let ex1 = fixtures::example1()?;
    let e = stone_embed(&ex1)?;
    let brute = enumerate_filters_brute(&ex1, DEFAULT_CANDIDATE_CAP)?;
    let mut brute_frb = Vec::new();
    for f in &brute {
        if is_frb(&ex1, f)? {
            brute_frb.push(f.clone());
        }
    }
    out.push(
        "example1 |F^RB| vs brute force",
        brute_frb == e.points,
        format!("{} points, brute force {} of {} filters", e.points.len(), brute_frb.len(), brute.len()),
    );
    let u = Universe::parse("W = {x,y,z}")?;
    let gens: Vec<(ElementId, SubsetPair)> =
        pictured_pairs(&u)?.into_iter().map(|(n, p)| (ex1.find(n).expect("example-1 names"), p)).collect();
    let full = SubsetPair { truth: u.full(), domain: u.full() };
    match extend_to_pairs(&ex1, &gens, full) {
        Ok(pairs) => {
            // The embedding is an injective homomorphism, so its image is a
            // copy of the algebra; the generated map being an isomorphism onto
            // the pictured pairs makes the two images isomorphic.
            out.push("example1 image ≅ pictured pairs", e.report.passed(), format!("{} pictured pairs", pairs.len()))
        }
        Err(why) => out.push("example1 image ≅ pictured pairs", false, why),
    }
    let inj = pictured_injections(&ex1, &e.image, e.points.len())?;
    let names: Vec<String> = inj
        .iter()
        .map(|[a, b, c]| {
            let g = |i: usize| e.points[i].generator(&ex1).map_or("?".into(), |g| format!("^{}", ex1.label(g)));
            format!("x={},y={},z={}", g(*a), g(*b), g(*c))
        })
        .collect();
    out.push("example1 pictured pairs as restriction to 3 points", !inj.is_empty(), names.join(" | "));
    Ok(out)
}

/// Filter extension on every strongly proper filter and every element it
/// omits, cross-checked against the enumerated `F^RB`.
pub fn filter_extension(_cfg: &SuiteConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    for (name, alg) in algebra_corpus()? {
        let proper = enumerate(&alg, FilterKind::StronglyProper)?.filters;
        let frb = enumerate(&alg, FilterKind::Frb)?.filters;
        let mut bad = Vec::new();
        let mut cases = 0;
        for f in &proper {
            let dom = project_domains(&alg, f);
            for x in alg.elements().filter(|&x| !f.contains(x)) {
                cases += 1;
                let witness = frb.iter().any(|u| f.is_subset(u) && !u.contains(x) && project_domains(&alg, u) == dom);
                match extend_filter(&alg, f, x) {
                    Ok(u) => {
                        let ok = f.is_subset(&u) && !u.contains(x) && project_domains(&alg, &u) == dom && frb.contains(&u);
                        if !ok {
                            bad.push(format!("{} avoiding {}: bad result {}", f.display(&alg), alg.label(x), u.display(&alg)));
                        }
                    }
                    Err(e) => bad.push(format!(
                        "{} avoiding {}: {e} (brute force {})",
                        f.display(&alg),
                        alg.label(x),
                        if witness { "finds one" } else { "finds none" }
                    )),
                }
            }
        }
        bad.truncate(4);
        out.push(
            format!("filter extension {name}"),
            bad.is_empty(),
            if bad.is_empty() { format!("{} strongly proper filters, {cases} cases", proper.len()) } else { bad.join("; ") },
        );
    }
    out.extend(one_step_invariant()?);
    Ok(out)
}

/// The one-step set `{Z ∧ Y | Z ≥ X, Y ∈ F}` for strongly proper `F` with
/// `1_X ∈ F` and `¬X ∉ F`: strongly proper, same `π₂`, omits `¬X`.
pub fn one_step_invariant() -> Result<Outcome> {
    let mut out = Outcome::default();
    for (name, alg) in algebra_corpus()? {
        let mut cases = 0;
        let mut bad = Vec::new();
        for f in enumerate_filters(&alg).into_iter().filter(|f| is_strongly_proper(&alg, f)) {
            for x in alg.elements() {
                if !f.contains(alg.relative_top(x)) || f.contains(alg.neg(x)) {
                    continue;
                }
                cases += 1;
                let g = one_step_closure(&alg, &f, x);
                let ok = is_filter(&alg, &g)
                    && is_strongly_proper(&alg, &g)
                    && project_domains(&alg, &g) == project_domains(&alg, &f)
                    && !g.contains(alg.neg(x));
                if !ok {
                    bad.push(format!("{} with {}", f.display(&alg), alg.label(x)));
                }
            }
        }
        bad.truncate(3);
        out.push(
            format!("one-step extension {name}"),
            bad.is_empty(),
            if bad.is_empty() { format!("{cases} cases") } else { bad.join("; ") },
        );
    }
    Ok(out)
}

/// Modal-free formulas over `{p, q}`: classical tautology iff valid under
/// every assignment into each listed algebra.
pub fn classical(cfg: &SuiteConfig) -> Result<Outcome> {
    let props = pq();
    let u = Universe::parse("W = {x,y}")?;
    let algebras: Vec<(String, Mrba)> = vec![
        ("example1".into(), Mrba::identity(fixtures::example1()?)),
        ("appendixA".into(), Mrba::identity(fixtures::appendix_a()?)),
        (u.to_string(), Mrba::identity(materialize(&u)?.algebra)),
    ];
    let lanes: Vec<AssignmentLanes> = algebras.iter().map(|(_, m)| AssignmentLanes::new(m, &props)).collect();
    let sem = Pair(
        ClassicalSemantics::new(props.clone())?,
        Lanes(lanes.iter().map(|l| l.semantics()).collect::<Vec<_>>()),
    );
    let classes = class_closure(&sem, &props, ClosureOptions::modal_free(cfg.classical_budget))?;
    let mut bad = Vec::new();
    let mut tautologies = 0;
    for c in &classes {
        let taut = sem.0.is_tautology(c.value.0);
        tautologies += taut as usize;
        for (i, values) in c.value.1.iter().enumerate() {
            let valid = lanes[i].first_invalid(values).is_none();
            if taut != valid {
                bad.push(format!("{} on {}: tautology={taut}, valid={valid}", c.rep, algebras[i].0));
            }
        }
        // Independent recomputation on the representative.
        if classical_tautology(&c.rep)? != taut {
            bad.push(format!("{}: truth-table disagreement", c.rep));
        }
    }
    let total = crate::syntax::count_formulas(props.len() + 1, ClosureOptions::modal_free(cfg.classical_budget));
    bad.truncate(5);
    let mut out = Outcome::default();
    out.push(
        format!("classical tautology ⇔ algebraic validity (≤ {} connectives)", cfg.classical_budget),
        bad.is_empty(),
        if bad.is_empty() {
            format!("{total} formulas in {} classes ({tautologies} tautologous), lanes {}", classes.len(), lanes.iter().map(|l| l.assignments.len().to_string()).collect::<Vec<_>>().join("+"))
        } else {
            bad.join("; ")
        },
    );
    Ok(out)
}

fn bind<'a>(sem: &'a ModelSemantics<'a>, values: &[(&str, SubsetPair)]) -> Bound<'a, ModelSemantics<'a>> {
    values.iter().fold(Bound::new(sem), |b, (name, v)| b.with(&Prop::new(name), *v))
}

fn valid_pair(p: SubsetPair) -> bool {
    p.truth == p.domain
}

/// Schema instances valid on one model, by class of formulas.
fn soundness_on_model(m: &AwarenessModel, props: &[Prop], budget: usize, depth: usize) -> Result<Vec<String>> {
    let sem = ModelSemantics(m);
    let classes = class_closure(&sem, props, ClosureOptions::modal(budget, depth))?;
    let mut bad = Vec::new();
    for id in [SchemaId::K, SchemaId::D, SchemaId::Agp, SchemaId::A0] {
        let schema = id.schema();
        let t = &schema.template.formula;
        match schema.template.metavars.len() {
            0 => {
                if !valid_pair(eval(&sem, t)?) {
                    bad.push(format!("{id} invalid"));
                }
            }
            1 => {
                for c in &classes {
                    if !valid_pair(eval(&bind(&sem, &[(METAVAR_PHI, c.value)]), t)?) {
                        bad.push(format!("{id} with φ = {}", c.rep));
                    }
                }
            }
            _ => {
                for a in &classes {
                    for b in &classes {
                        if id == SchemaId::Agp && b.props & !a.props != 0 {
                            continue;
                        }
                        if !valid_pair(eval(&bind(&sem, &[(METAVAR_PHI, a.value), (METAVAR_PSI, b.value)]), t)?) {
                            bad.push(format!("{id} with φ = {}, ψ = {}", a.rep, b.rep));
                        }
                    }
                }
            }
        }
    }
    for c in classes.iter().filter(|c| valid_pair(c.value)) {
        if !valid_pair(eval(&sem, &nec_ak(&c.rep))?) {
            bad.push(format!("Nec_AK from {}", c.rep));
        }
    }
    // Oracle: explicit instances over the formulas with at most one
    // connective, judged by the truth clauses.
    let pool = enumerate_formulas(props, ClosureOptions::modal(1, 1));
    for id in [SchemaId::K, SchemaId::D, SchemaId::Agp, SchemaId::A0] {
        for f in instantiate(&id.schema(), &pool) {
            if !valid_pair(m.extension(&f)) {
                bad.push(format!("explicit instance {f}"));
            }
        }
    }
    Ok(bad)
}

/// Named model fixtures: `figure3`, the necessitation model and
/// the dual of `example2` under its assignment.
pub fn model_corpus() -> Result<Vec<(String, AwarenessModel)>> {
    let ex2 = fixtures::example2()?;
    let h = example_assignment(&ex2.algebra)?;
    Ok(vec![
        ("figure3".into(), fixtures::figure3()?),
        ("necessitation".into(), necessitation_counterexample().0),
        ("dual(example2)".into(), mrba_to_model(&ex2, &h)?.model),
    ])
}

pub fn soundness(cfg: &SuiteConfig) -> Result<Outcome> {
    let props = pq();
    let mut models = model_corpus()?;
    let mut r = rng(cfg.seed, 7);
    for i in 0..cfg.random_models {
        let shape = if i % 2 == 0 { AccessShape::Partition } else { AccessShape::Arbitrary };
        models.push((format!("random#{i}"), random_model(&mut r, cfg.max_worlds, &props, shape)));
    }
    let results: Vec<Result<(String, bool, Vec<String>)>> = models
        .par_iter()
        .map(|(name, m)| {
            let m = m.with_props(&props);
            let well_formed = m.check().passed();
            Ok((name.clone(), well_formed, soundness_on_model(&m, &props, cfg.soundness_budget, cfg.soundness_depth)?))
        })
        .collect();
    let mut bad = Vec::new();
    for res in results {
        let (name, ok, b) = res?;
        if !ok {
            bad.push(format!("{name}: ill-formed"));
        }
        if let Some(first) = b.first() {
            bad.push(format!("{name}: {first} (+{} more)", b.len() - 1));
        }
    }
    let mut out = Outcome::default();
    out.push(
        format!("K, D, AGP, A0, Nec_AK (budget {}, depth {})", cfg.soundness_budget, cfg.soundness_depth),
        bad.is_empty(),
        if bad.is_empty() { format!("{} models ({} random), 0 invalid instances", models.len(), cfg.random_models) } else { bad.join("; ") },
    );
    let (m, phi) = necessitation_counterexample();
    let k = Formula::know(phi.clone());
    let ok = m.check().passed() && m.valid(&phi) && !m.valid(&k) && !valid_pair(m.extension(&k));
    out.push("necessitation fails", ok, format!("{phi} valid, {k} invalid at w0"));
    Ok(out)
}

/// Does `schema` hold for every admissible value of its metavariable on the
/// frame? Returns a falsifying pair otherwise.
fn frame_falsifier(frame: &AwarenessFrame, template: &Formula, pairs: &[SubsetPair]) -> Result<Option<SubsetPair>> {
    let m = AwarenessModel::new(frame.clone(), BTreeMap::new());
    let sem = ModelSemantics(&m);
    for &p in pairs {
        if !valid_pair(eval(&bind(&sem, &[(METAVAR_PHI, p)]), template)?) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Schema ↔ frame property table on every frame up to the configured size.
pub fn correspondence(cfg: &SuiteConfig) -> Result<Outcome> {
    let rows = [
        (SchemaId::T, FrameProperty::Reflexive),
        (SchemaId::Four, FrameProperty::Transitive),
        (SchemaId::FiveA, FrameProperty::Euclidean),
        (SchemaId::Ka, FrameProperty::KaCond),
    ];
    let frames: Vec<AwarenessFrame> = (1..=cfg.frame_worlds).flat_map(all_frames).collect();
    let pairs: Vec<Vec<SubsetPair>> = frames.par_iter().map(admissible_pairs).collect();
    let mut out = Outcome::default();
    for (id, prop) in rows {
        let t = id.schema().template.formula;
        let verdicts: Vec<(bool, Option<SubsetPair>)> = frames
            .par_iter()
            .zip(&pairs)
            .map(|(f, ps)| Ok((f.property(prop), frame_falsifier(f, &t, ps)?)))
            .collect::<Result<_>>()?;
        let with = verdicts.iter().filter(|v| v.0).count();
        let unsound = verdicts.iter().position(|v| v.0 && v.1.is_some());
        out.push(
            format!("{id} valid on {prop} frames"),
            unsound.is_none(),
            match unsound {
                None => format!("{with} of {} frames have the property, all validate {id}", frames.len()),
                Some(i) => format!("falsified on frame #{i}"),
            },
        );
        let counter = verdicts.iter().position(|v| !v.0 && v.1.is_some());
        let confirmed = match counter {
            Some(i) => confirm_counterexample(&frames[i], &t, verdicts[i].1.expect("falsifier"))?,
            None => None,
        };
        out.push(
            format!("{id} counterexample without {prop}"),
            confirmed.is_some(),
            confirmed.unwrap_or_else(|| "none found".into()),
        );
    }
    // KA-cond follows from transitivity; at four worlds only the discrete
    // order is swept, the hardest case for KA-cond.
    let mut failures = frames.iter().filter(|f| f.property(FrameProperty::Transitive) && !f.property(FrameProperty::KaCond)).count();
    let mut swept = frames.len();
    if cfg.frame_worlds < 4 {
        let n = 4;
        let worlds: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let discrete: Vec<u128> = (0..n).map(|w| 1 << w).collect();
        for r in all_serial_relations(n) {
            let f = AwarenessFrame::from_rows(worlds.clone(), discrete.clone(), r)?;
            swept += 1;
            if f.property(FrameProperty::Transitive) && !f.property(FrameProperty::KaCond) {
                failures += 1;
            }
        }
    }
    out.push("transitive ⇒ KA-cond", failures == 0, format!("{swept} frames, {failures} failures"));
    // Necessitation is sound where every successor sits above.
    let mut nec_bad = 0;
    let mut nec_frames = 0;
    for (f, ps) in frames.iter().zip(&pairs) {
        if !f.property(FrameProperty::NecCond) {
            continue;
        }
        nec_frames += 1;
        let m = AwarenessModel::new(f.clone(), BTreeMap::new());
        let sem = ModelSemantics(&m);
        nec_bad += ps.iter().filter(|&&p| valid_pair(p) && !valid_pair(sem.know(&p))).count();
    }
    out.push("necessitation sound on nec-cond frames", nec_bad == 0, format!("{nec_frames} frames, {nec_bad} failures"));
    let preorders: usize = (1..=cfg.frame_worlds).map(|n| all_preorders(n).len()).sum();
    out.push("frames swept", true, format!("{} frames from {preorders} preorders, |W| ≤ {}", frames.len(), cfg.frame_worlds));
    Ok(out)
}

/// Rebuilds the falsifier as a model with one proposition and checks the
/// instance with the truth clauses.
fn confirm_counterexample(frame: &AwarenessFrame, template: &Formula, p: SubsetPair) -> Result<Option<String>> {
    let props = BTreeMap::from([(Prop::new("p"), (p.domain, p.truth))]);
    let m = AwarenessModel::new(frame.clone(), props);
    let inst = template.substitute(&|x: &Prop| (x.name() == METAVAR_PHI).then(|| Formula::prop("p")));
    let ext = m.extension(&inst);
    if !m.check().passed() || m.valid(&inst) || valid_pair(ext) {
        return Ok(None);
    }
    let f = &m.frame;
    let r: Vec<String> = (0..f.len()).map(|w| format!("{}→{}", f.worlds()[w], f.format_set(f.successors(w)))).collect();
    Ok(Some(format!(
        "R: {}; L(p)={}, V(p)={}; {inst} fails at {}",
        r.join(" "),
        f.format_set(p.domain),
        f.format_set(p.truth),
        f.format_set(ext.domain & !ext.truth)
    )))
}

/// Modal algebras of the corpus with the assignments to sweep.
pub fn mrba_corpus(cfg: &SuiteConfig) -> Result<Vec<(String, Mrba, Vec<Assignment>)>> {
    let props = pq();
    let mut out = Vec::new();
    let mut push = |name: String, m: Mrba, own: Option<Assignment>| {
        let total = m.algebra.size().pow(props.len() as u32);
        let hs = if total <= cfg.max_assignments {
            all_assignments(&m.algebra, &props)
        } else {
            let mut r = rng(cfg.seed, 11);
            let n = m.algebra.size() as u32;
            let mut hs: Vec<Assignment> = own.into_iter().collect();
            for _ in 0..64 {
                let mut h = Assignment::default();
                for p in &props {
                    h.insert(p.clone(), ElementId(r.gen_range(0..n)));
                }
                hs.push(h);
            }
            hs
        };
        out.push((name, m, hs));
    };
    push("example2".into(), fixtures::example2()?, None);
    push("identity(appendixA)".into(), Mrba::identity(fixtures::appendix_a()?), None);
    push("identity(example1)".into(), Mrba::identity(fixtures::example1()?), None);
    for (name, model) in [("necessitation", necessitation_counterexample().0), ("figure3", fixtures::figure3()?)] {
        let d = model_to_mrba(&model.with_props(&props))?;
        push(format!("dual({name})"), d.mrba, Some(d.assignment));
    }
    Ok(out)
}

fn report_line(out: &mut Outcome, name: String, reports: &[DualityReport]) {
    let checked: usize = reports.iter().map(|r| r.checked).sum();
    let bad: Vec<String> = reports.iter().flat_map(|r| r.mismatches.iter()).take(3).map(|m| format!("{}: {} vs {}", m.formula, m.algebra, m.model)).collect();
    out.push(name, bad.is_empty(), if bad.is_empty() { format!("{checked} class representatives, 0 mismatches") } else { bad.join("; ") });
}

/// Both translations on every fixture, and the structural comparison of
/// the dual of `example2` with `figure3`.
pub fn duality(cfg: &SuiteConfig) -> Result<Outcome> {
    let props = pq();
    let battery = Battery::closure(&props, cfg.duality_budget, cfg.duality_depth);
    let mut out = Outcome::default();
    for (name, m) in model_corpus()? {
        let m = m.with_props(&props);
        let r = verify_prop1(&m, &battery)?;
        report_line(&mut out, format!("model→algebra {name}"), &[r]);
    }
    for (name, m, hs) in mrba_corpus(cfg)? {
        let reports: Vec<DualityReport> = hs
            .par_iter()
            .map(|h| {
                let d = mrba_to_model(&m, h)?;
                verify_prop2_with(&m, h, &d, &battery)
            })
            .collect::<Result<_>>()?;
        report_line(&mut out, format!("algebra→model {name} ({} assignments)", hs.len()), &reports);
    }
    out.extend(figure3_comparison(&battery)?);
    Ok(out)
}

/// Isomorphism of the dual of `example2` with `figure3`, with a
/// diagnostic of where the two differ.
pub fn figure3_comparison(battery: &Battery) -> Result<Outcome> {
    let ex2 = fixtures::example2()?;
    let h = example_assignment(&ex2.algebra)?;
    let dual = mrba_to_model(&ex2, &h)?.model;
    let fig = fixtures::figure3()?;
    let mut out = Outcome::default();
    let iso = find_model_isomorphism(&dual, &fig);
    let detail = match &iso {
        Some(map) => format!("isomorphic via {}", map.iter().enumerate().map(|(i, &j)| format!("{}↦{}", dual.frame.worlds()[i], fig.frame.worlds()[j])).collect::<Vec<_>>().join(", ")),
        None => figure3_diagnostic(&dual, &fig, battery)?,
    };
    out.push("dual(example2) ≅ figure3", iso.is_some(), detail);
    Ok(out)
}

/// Matches worlds by their filter generator (`^X_B` ↔ `bx`, ...) and lists
/// which parts of the structure agree.
fn figure3_diagnostic(dual: &AwarenessModel, fig: &AwarenessModel, battery: &Battery) -> Result<String> {
    let names = [("^X_B", "bx"), ("^Y_B", "by"), ("^Z_B", "bz"), ("^X_R", "rx"), ("^Y_R", "ry")];
    let mut map = Vec::new();
    for w in dual.frame.worlds() {
        match names.iter().find(|(d, _)| d == w) {
            Some((_, f)) => map.push(fig.frame.world(f)?),
            None => return Ok(format!("unexpected world {w} in the dual")),
        }
    }
    let n = map.len();
    let mut geq_diff = 0;
    let mut r_diff = Vec::new();
    for w in 0..n {
        for v in 0..n {
            geq_diff += (dual.frame.geq(w, v) != fig.frame.geq(map[w], map[v])) as usize;
            let (a, b) = (dual.frame.related(w, v), fig.frame.related(map[w], map[v]));
            if a != b {
                r_diff.push(format!("{}{}{}", fig.frame.worlds()[map[w]], if a { "→" } else { "↛" }, fig.frame.worlds()[map[v]]));
            }
        }
    }
    let lv_same = pq().iter().all(|p| {
        let moved = |s: u128| (0..n).filter(|&w| s >> w & 1 == 1).fold(0u128, |m, w| m | 1 << map[w]);
        moved(dual.lang(p)) == fig.lang(p) && moved(dual.val(p)) == fig.val(p)
    });
    // Extensions of the battery on both models, transported along the map.
    let sem = Pair(ModelSemantics(dual), ModelSemantics(fig));
    let rows = match battery {
        Battery::Closure { props, budget, depth } => class_closure(&sem, props, ClosureOptions::modal(*budget, *depth))?,
        Battery::Formulas(_) => Vec::new(),
    };
    let moved = |s: u128| (0..n).filter(|&w| s >> w & 1 == 1).fold(0u128, |m, w| m | 1 << map[w]);
    let ext_diff = rows
        .iter()
        .filter(|c| {
            let (a, b) = c.value;
            SubsetPair { truth: moved(a.truth), domain: moved(a.domain) } != b
        })
        .count();
    Ok(format!(
        "not isomorphic; matching worlds by generator: ≥ differs on {geq_diff} pairs, L and V {}, R differs on {} edges ({}) since the dual R is not partitional; battery extensions differ on {ext_diff} of {} classes",
        if lv_same { "agree" } else { "differ" },
        r_diff.len(),
        r_diff.join(", "),
        rows.len()
    ))
}

/// Algebraic validity against validity in the dual model, per assignment.
pub fn dual_validity(cfg: &SuiteConfig) -> Result<Outcome> {
    let props = pq();
    let battery = Battery::closure(&props, cfg.duality_budget, cfg.duality_depth);
    let mut out = Outcome::default();
    for (name, m, hs) in mrba_corpus(cfg)? {
        let rows: Vec<(usize, Vec<Formula>)> = hs
            .par_iter()
            .map(|h| {
                let d = mrba_to_model(&m, h)?;
                validity_agreement(&m, h, &d, &battery)
            })
            .collect::<Result<_>>()?;
        let checked: usize = rows.iter().map(|r| r.0).sum();
        let bad: Vec<String> = rows.iter().flat_map(|r| r.1.iter()).take(3).map(|f| f.to_string()).collect();
        out.push(
            format!("validity agreement {name} ({} assignments)", hs.len()),
            bad.is_empty(),
            if bad.is_empty() { format!("{checked} class representatives, 0 disagreements") } else { bad.join("; ") },
        );
    }
    Ok(out)
}

pub const SUITE_NAMES: [&str; 7] = ["algebra", "stone", "classical", "soundness", "correspondence", "duality", "all"];

/// Runs a suite by name: `algebra` (laws, domains, order lemma), `stone`
/// (embedding and filter extension), `classical`, `soundness`,
/// `correspondence`, `duality` (both translations and validity agreement)
/// or `all`.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Option<Outcome>> {
    let mut out = Outcome::default();
    match name {
        "algebra" => {
            out.extend(rba_axioms(cfg)?);
            out.extend(local_boolean(cfg)?);
            out.extend(order_lemma(cfg)?);
        }
        "stone" => {
            out.extend(stone(cfg)?);
            out.extend(filter_extension(cfg)?);
        }
        "classical" => out.extend(classical(cfg)?),
        "soundness" => out.extend(soundness(cfg)?),
        "correspondence" => out.extend(correspondence(cfg)?),
        "duality" => {
            out.extend(duality(cfg)?);
            out.extend(dual_validity(cfg)?);
        }
        "all" => {
            for n in &SUITE_NAMES[..SUITE_NAMES.len() - 1] {
                out.extend(run_suite(n, cfg)?.expect("known suite"));
            }
        }
        _ => return Ok(None),
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutation_changes_one_entry() {
        let a = fixtures::example1().unwrap();
        let mut r = rng(0, 0);
        for _ in 0..10 {
            let (m, _) = mutate(&a, &mut r);
            assert_ne!(m, a);
        }
    }

    #[test]
    fn lemma1_clean_on_boolean() {
        assert!(order_violations(&Algebra::powerset(&["a", "b"])).is_empty());
    }

    #[test]
    fn pictured_extension_fails_on_bad_generators() {
        let ex1 = fixtures::example1().unwrap();
        let u = Universe::parse("W = {x,y,z}").unwrap();
        let full = SubsetPair { truth: u.full(), domain: u.full() };
        let x = ex1.find("X_B").unwrap();
        let y = ex1.find("Y_B").unwrap();
        let same = u.parse_pair("({x},{x,y,z})").unwrap();
        assert!(extend_to_pairs(&ex1, &[(x, same), (y, same)], full).is_err());
    }

    #[test]
    fn full_set_is_top_of_pairs() {
        assert_eq!(crate::concrete::full_set(3), 0b111);
    }
}
