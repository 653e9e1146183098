//! JSON file formats for algebras, modal algebras and awareness models.
//!
//! Elements, worlds and propositions are referred to by name everywhere.
//! An algebra file has one of three shapes:
//!
//! * operation tables: `elements`, `top`, `bottom`, `meet`, `join`, `neg`;
//! * glued powerset blocks: `blocks` (name and atoms) and `homs` (for each
//!   target atom, the source atom it sits under);
//! * a concrete algebra: `universe`, e.g. `"W = {x,y}"`.
//!
//! A modal algebra file adds `fk`, listed in element order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, ElementId};
use crate::concrete::{iter_points, materialize_with_cap, Universe};
use crate::error::{Error, Result};
use crate::filters::Filter;
use crate::frames::{AwarenessFrame, AwarenessModel, WorldSet};
use crate::glue::{atom_hom, glue, powerset_block, Block, BlockHom};
use crate::modal::Mrba;
use crate::syntax::Prop;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TablesFile {
    pub elements: Vec<String>,
    pub top: String,
    pub bottom: String,
    pub meet: Vec<Vec<String>>,
    pub join: Vec<Vec<String>>,
    pub neg: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fk: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub name: String,
    pub atoms: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub from: String,
    pub to: String,
    /// Target atom to source atom.
    pub atoms: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluedFile {
    pub blocks: Vec<BlockSpec>,
    #[serde(default)]
    pub homs: Vec<HomSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fk: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConcreteFile {
    pub universe: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fk: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraFile {
    Tables(TablesFile),
    Glued(GluedFile),
    Concrete(ConcreteFile),
}

impl AlgebraFile {
    pub fn fk(&self) -> Option<&[String]> {
        match self {
            AlgebraFile::Tables(t) => t.fk.as_deref(),
            AlgebraFile::Glued(g) => g.fk.as_deref(),
            AlgebraFile::Concrete(c) => c.fk.as_deref(),
        }
    }
}

fn lookup(names: &BTreeMap<&str, usize>, name: &str) -> Result<usize> {
    names.get(name).copied().ok_or_else(|| Error::UnknownElement(name.to_string()))
}

fn from_tables(t: &TablesFile) -> Result<Algebra> {
    let n = t.elements.len();
    let mut names = BTreeMap::new();
    for (i, e) in t.elements.iter().enumerate() {
        if names.insert(e.as_str(), i).is_some() {
            return Err(Error::DuplicateName(e.clone()));
        }
    }
    let square = |table: &'static str, rows: &[Vec<String>]| -> Result<Vec<usize>> {
        if rows.len() != n {
            return Err(Error::TableShape { table, got: rows.len(), expected: n });
        }
        let mut out = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::TableShape { table, got: row.len(), expected: n });
            }
            for x in row {
                out.push(lookup(&names, x)?);
            }
        }
        Ok(out)
    };
    let meet = square("meet", &t.meet)?;
    let join = square("join", &t.join)?;
    let neg = t.neg.iter().map(|x| lookup(&names, x)).collect::<Result<Vec<_>>>()?;
    Algebra::new(t.elements.clone(), meet, join, neg, lookup(&names, &t.top)?, lookup(&names, &t.bottom)?)
}

fn from_glued(g: &GluedFile) -> Result<Algebra> {
    let atom_refs: Vec<Vec<&str>> = g.blocks.iter().map(|b| b.atoms.iter().map(String::as_str).collect()).collect();
    let blocks: Vec<Block> = g.blocks.iter().zip(&atom_refs).map(|(b, atoms)| powerset_block(&b.name, atoms)).collect();
    let block_index = |name: &str| {
        g.blocks
            .iter()
            .position(|b| b.name == name)
            .ok_or_else(|| Error::Input(format!("unknown block `{name}`")))
    };
    let mut homs: Vec<BlockHom> = Vec::new();
    for h in &g.homs {
        let (from, to) = (block_index(&h.from)?, block_index(&h.to)?);
        let (src, dst) = (&g.blocks[from].atoms, &g.blocks[to].atoms);
        let mut map = Vec::with_capacity(dst.len());
        for t in dst {
            let s = h
                .atoms
                .get(t)
                .ok_or_else(|| Error::Input(format!("hom {} -> {} does not place atom `{t}`", h.from, h.to)))?;
            let i = src
                .iter()
                .position(|a| a == s)
                .ok_or_else(|| Error::Input(format!("hom {} -> {}: `{s}` is not an atom of {}", h.from, h.to, h.from)))?;
            map.push(i);
        }
        if src.len() >= usize::BITS as usize {
            return Err(Error::CapExceeded { what: "block atoms", needed: src.len(), cap: usize::BITS as usize - 1 });
        }
        homs.push(atom_hom(from, to, src.len(), &map));
    }
    glue(&blocks, &homs)
}

/// Elements of a concrete algebra are capped by the point limit given.
pub fn algebra_from_file(file: &AlgebraFile, max_points: usize) -> Result<Algebra> {
    match file {
        AlgebraFile::Tables(t) => from_tables(t),
        AlgebraFile::Glued(g) => from_glued(g),
        AlgebraFile::Concrete(c) => Ok(materialize_with_cap(&Universe::parse(&c.universe)?, max_points)?.algebra),
    }
}

pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("not an algebra file: {e}")))
}

pub fn parse_algebra(text: &str) -> Result<Algebra> {
    algebra_from_file(&parse_algebra_file(text)?, crate::concrete::DEFAULT_MATERIALIZE_POINTS)
}

/// A modal algebra file must carry `fk`. Laws are not checked here.
pub fn parse_mrba(text: &str) -> Result<Mrba> {
    let file = parse_algebra_file(text)?;
    let algebra = algebra_from_file(&file, crate::concrete::DEFAULT_MATERIALIZE_POINTS)?;
    let fk = file.fk().ok_or_else(|| Error::Input("modal algebra file has no `fk` table".into()))?;
    let fk = fk.iter().map(|x| algebra.element(x)).collect::<Result<Vec<_>>>()?;
    Mrba::new(algebra, fk)
}

pub fn algebra_to_file(alg: &Algebra) -> TablesFile {
    let l = |x: ElementId| alg.label(x).to_string();
    TablesFile {
        elements: alg.labels().to_vec(),
        top: l(alg.top()),
        bottom: l(alg.bottom()),
        meet: alg.elements().map(|a| alg.elements().map(|b| l(alg.meet(a, b))).collect()).collect(),
        join: alg.elements().map(|a| alg.elements().map(|b| l(alg.join(a, b))).collect()).collect(),
        neg: alg.elements().map(|a| l(alg.neg(a))).collect(),
        fk: None,
    }
}

pub fn mrba_to_file(m: &Mrba) -> TablesFile {
    let mut t = algebra_to_file(&m.algebra);
    t.fk = Some(m.fk_table().iter().map(|&x| m.algebra.label(x).to_string()).collect());
    t
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub worlds: Vec<String>,
    /// `[w, v]` means `w ≥ v`; closed reflexively and transitively on load.
    #[serde(default)]
    pub geq: Vec<[String; 2]>,
    #[serde(rename = "R")]
    pub access: Vec<[String; 2]>,
    #[serde(rename = "L")]
    pub lang: BTreeMap<String, Vec<String>>,
    #[serde(rename = "V")]
    pub val: BTreeMap<String, Vec<String>>,
}

pub fn model_from_file(file: &ModelFile) -> Result<AwarenessModel> {
    let probe = AwarenessFrame::new(file.worlds.clone(), &[], &[])?;
    let pairs = |rel: &[[String; 2]]| -> Result<Vec<(usize, usize)>> {
        rel.iter().map(|[w, v]| Ok((probe.world(w)?, probe.world(v)?))).collect()
    };
    let frame = AwarenessFrame::new(file.worlds.clone(), &pairs(&file.geq)?, &pairs(&file.access)?)?;
    let set = |ws: &[String]| -> Result<WorldSet> { ws.iter().try_fold(0, |m, w| Ok(m | 1 << frame.world(w)?)) };
    let mut props = BTreeMap::new();
    for (p, l) in &file.lang {
        let v = file.val.get(p).map(Vec::as_slice).unwrap_or(&[]);
        props.insert(Prop::new(p), (set(l)?, set(v)?));
    }
    if let Some(p) = file.val.keys().find(|p| !file.lang.contains_key(*p)) {
        return Err(Error::Input(format!("proposition `{p}` has V but no L")));
    }
    Ok(AwarenessModel::new(frame, props))
}

pub fn parse_model(text: &str) -> Result<AwarenessModel> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Input(format!("not a model file: {e}")))?;
    model_from_file(&file)
}

/// `geq` is written as the full relation without its reflexive pairs.
pub fn model_to_file(m: &AwarenessModel) -> ModelFile {
    let f = &m.frame;
    let names = |s: WorldSet| iter_points(s).map(|w| f.worlds()[w].clone()).collect::<Vec<_>>();
    let n = f.len();
    let mut geq = Vec::new();
    let mut access = Vec::new();
    for w in 0..n {
        for v in 0..n {
            if w != v && f.geq(w, v) {
                geq.push([f.worlds()[w].clone(), f.worlds()[v].clone()]);
            }
            if f.related(w, v) {
                access.push([f.worlds()[w].clone(), f.worlds()[v].clone()]);
            }
        }
    }
    let mut lang = BTreeMap::new();
    let mut val = BTreeMap::new();
    for (p, l, v) in m.entries() {
        lang.insert(p.to_string(), names(l));
        val.insert(p.to_string(), names(v));
    }
    ModelFile { worlds: f.worlds().to_vec(), geq, access, lang, val }
}

/// A filter family as a list of element-name sets.
pub fn filters_to_json(alg: &Algebra, filters: &[Filter]) -> serde_json::Value {
    serde_json::Value::from(filters.iter().map(|u| u.names(alg)).collect::<Vec<_>>())
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_round_trip() {
        let a = Algebra::powerset(&["a", "b"]);
        let text = to_pretty_json(&algebra_to_file(&a));
        assert_eq!(parse_algebra(&text).unwrap(), a);
        let m = Mrba::identity(a);
        assert_eq!(parse_mrba(&to_pretty_json(&mrba_to_file(&m))).unwrap(), m);
    }

    #[test]
    fn glued_matches_tables() {
        let glued = r#"{
            "blocks": [{"name": "B", "atoms": ["x", "y", "z"]}, {"name": "R", "atoms": ["x", "y"]}],
            "homs": [{"from": "B", "to": "R", "atoms": {"x": "x", "y": "y"}}]
        }"#;
        let a = parse_algebra(glued).unwrap();
        assert_eq!(a.size(), 12);
        assert!(a.check_rba().passed());
    }

    #[test]
    fn concrete_universe() {
        let a = parse_algebra(r#"{"universe": "W = {x,y}"}"#).unwrap();
        assert_eq!(a.size(), 9);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_algebra("{").is_err());
        assert!(parse_algebra(r#"{"elements": ["a"], "top": "a", "bottom": "b", "meet": [["a"]], "join": [["a"]], "neg": ["a"]}"#).is_err());
        assert!(parse_mrba(r#"{"universe": "W = {x}"}"#).is_err());
        assert!(parse_model(r#"{"worlds": ["a"], "R": [["a", "b"]], "L": {}, "V": {}}"#).is_err());
    }

    #[test]
    fn model_round_trip() {
        let text = r#"{"worlds": ["a", "b"], "geq": [["b", "a"]], "R": [["a", "b"], ["b", "b"]],
                       "L": {"p": ["a", "b"]}, "V": {"p": ["b"]}}"#;
        let m = parse_model(text).unwrap();
        assert!(m.frame.geq(1, 0));
        assert!(m.check().passed());
        let again = parse_model(&to_pretty_json(&model_to_file(&m))).unwrap();
        assert_eq!(again, m);
    }
}
