//! Axiom schemas as templates over the metavariables `$phi` and `$psi`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{parse, props_of, Formula, Prop};
use crate::error::{Error, Result};

pub const METAVAR_PHI: &str = "$phi";
pub const METAVAR_PSI: &str = "$psi";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SchemaId {
    K,
    D,
    T,
    #[serde(rename = "4")]
    Four,
    #[serde(rename = "5A")]
    FiveA,
    #[serde(rename = "AGP")]
    Agp,
    A0,
    #[serde(rename = "KA")]
    Ka,
}

impl SchemaId {
    pub const ALL: [SchemaId; 8] = [
        SchemaId::K,
        SchemaId::D,
        SchemaId::T,
        SchemaId::Four,
        SchemaId::FiveA,
        SchemaId::Agp,
        SchemaId::A0,
        SchemaId::Ka,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SchemaId::K => "K",
            SchemaId::D => "D",
            SchemaId::T => "T",
            SchemaId::Four => "4",
            SchemaId::FiveA => "5A",
            SchemaId::Agp => "AGP",
            SchemaId::A0 => "A0",
            SchemaId::Ka => "KA",
        }
    }

    fn source(self) -> &'static str {
        match self {
            SchemaId::K => "(K $phi & K ($phi -> $psi)) -> K $psi",
            SchemaId::D => "~K 0",
            SchemaId::T => "K $phi -> $phi",
            SchemaId::Four => "K $phi -> K K $phi",
            SchemaId::FiveA => "(~K $phi & A $phi) -> K ~K $phi",
            SchemaId::Agp => "A $phi -> A $psi",
            SchemaId::A0 => "K $phi -> A $phi",
            SchemaId::Ka => "A $phi <-> K A $phi",
        }
    }

    pub fn schema(self) -> AxiomSchema {
        let template = parse(self.source()).expect("built-in schema parses");
        let metavars = props_of(&template).into_iter().filter(Prop::is_metavar).collect();
        AxiomSchema { id: self, template: Template { formula: template, metavars } }
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SchemaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemaId::ALL
            .into_iter()
            .find(|id| id.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Input(format!("unknown axiom schema `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub formula: Formula,
    /// Metavariables in order of first name (`$phi` before `$psi`).
    pub metavars: Vec<Prop>,
}

impl Template {
    pub fn fill(&self, values: &[&Formula]) -> Formula {
        self.formula.substitute(&|p: &Prop| {
            self.metavars.iter().position(|m| m == p).map(|i| values[i].clone())
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSchema {
    pub id: SchemaId,
    pub template: Template,
}

impl AxiomSchema {
    /// AGP restricts `$psi` to formulas over the propositions of `$phi`.
    pub fn admits(&self, values: &[&Formula]) -> bool {
        match self.id {
            SchemaId::Agp => props_of(values[1]).is_subset(&props_of(values[0])),
            _ => true,
        }
    }
}

/// Every instance with metavariables drawn from `pool`.
pub fn instantiate(schema: &AxiomSchema, pool: &[Formula]) -> Vec<Formula> {
    match schema.template.metavars.len() {
        0 => vec![schema.template.formula.clone()],
        1 => pool.iter().map(|f| schema.template.fill(&[f])).collect(),
        _ => {
            let mut out = Vec::new();
            for a in pool {
                for b in pool {
                    if schema.admits(&[a, b]) {
                        out.push(schema.template.fill(&[a, b]));
                    }
                }
            }
            out
        }
    }
}

/// AGP instances `Aφ → Aψ` for one `φ`, with `ψ` drawn from `psi_pool`.
pub fn agp_instances(phi: &Formula, psi_pool: &[Formula]) -> Vec<Formula> {
    let schema = SchemaId::Agp.schema();
    psi_pool
        .iter()
        .filter(|psi| schema.admits(&[phi, psi]))
        .map(|psi| schema.template.fill(&[phi, psi]))
        .collect()
}

/// The `Nec_AK` consequence `Aφ → Kφ`.
pub fn nec_ak(phi: &Formula) -> Formula {
    Formula::implies(Formula::aware(phi.clone()), Formula::know(phi.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn examples() {
        let pool = [p("p"), p("q")];
        let k = instantiate(&SchemaId::K.schema(), &pool);
        assert!(k.contains(&p("(K p & K (p -> q)) -> K q")));
        assert_eq!(instantiate(&SchemaId::D.schema(), &pool), vec![p("~K 0")]);
        let ka = instantiate(&SchemaId::Ka.schema(), &pool[..1]);
        assert_eq!(ka, vec![p("A p <-> K A p")]);
        assert_eq!(nec_ak(&p("p")), p("A p -> K p"));
    }

    #[test]
    fn agp_respects_propositions() {
        let pool = [p("p"), p("q"), p("p & ~p"), p("1")];
        let inst = agp_instances(&p("p"), &pool);
        assert_eq!(inst.len(), 3);
        assert!(!inst.contains(&p("A p -> A q")));
        let all = instantiate(&SchemaId::Agp.schema(), &pool);
        assert_eq!(all.len(), 3 + 2 + 3 + 1);
    }

    #[test]
    fn ids_round_trip() {
        for id in SchemaId::ALL {
            assert_eq!(id.id().parse::<SchemaId>().unwrap(), id);
            assert!(!id.schema().template.formula.to_string().is_empty());
        }
        assert!("X".parse::<SchemaId>().is_err());
    }

    #[test]
    fn instances_use_pool_propositions_only() {
        let pool = [p("p"), p("K q")];
        for id in SchemaId::ALL {
            for f in instantiate(&id.schema(), &pool) {
                assert!(props_of(&f).iter().all(|x| x.name() == "p" || x.name() == "q"));
            }
        }
    }
}
