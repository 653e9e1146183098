//! Built-in fixtures. The JSON files are compiled in; setting `RBA_FIXTURES`
//! to a directory makes every loader read that directory instead.

use std::path::PathBuf;

use crate::algebra::Algebra;
use crate::concrete::{materialize, Universe};
use crate::error::Result;
use crate::frames::AwarenessModel;
use crate::io::{parse_algebra, parse_model, parse_mrba};
use crate::modal::{Assignment, Mrba};

pub const FIXTURES_ENV: &str = "RBA_FIXTURES";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    /// Two glued blocks, `B` on atoms `x, y, z` over `R` on `x, y`.
    Example1,
    /// `B` on `Y, ¬Y` over `R` on `X, ¬X` with `Y_B ↦ 1_R`.
    AppendixA,
    /// `Example1` with its knowledge operator.
    Example2,
    /// Five worlds, three blue and two red, with a partitional `R`.
    Figure3,
}

impl Fixture {
    pub const ALL: [Fixture; 4] = [Fixture::Example1, Fixture::AppendixA, Fixture::Example2, Fixture::Figure3];

    pub fn file_name(self) -> &'static str {
        match self {
            Fixture::Example1 => "example1.rba.json",
            Fixture::AppendixA => "appendixA.rba.json",
            Fixture::Example2 => "example2.mrba.json",
            Fixture::Figure3 => "figure3.model.json",
        }
    }

    fn embedded(self) -> &'static str {
        match self {
            Fixture::Example1 => include_str!("../fixtures/example1.rba.json"),
            Fixture::AppendixA => include_str!("../fixtures/appendixA.rba.json"),
            Fixture::Example2 => include_str!("../fixtures/example2.mrba.json"),
            Fixture::Figure3 => include_str!("../fixtures/figure3.model.json"),
        }
    }

    pub fn text(self) -> Result<String> {
        match std::env::var_os(FIXTURES_ENV) {
            Some(dir) => Ok(std::fs::read_to_string(PathBuf::from(dir).join(self.file_name()))?),
            None => Ok(self.embedded().to_string()),
        }
    }
}

pub fn example1() -> Result<Algebra> {
    parse_algebra(&Fixture::Example1.text()?)
}

pub fn appendix_a() -> Result<Algebra> {
    parse_algebra(&Fixture::AppendixA.text()?)
}

pub fn example2() -> Result<Mrba> {
    parse_mrba(&Fixture::Example2.text()?)
}

pub fn figure3() -> Result<AwarenessModel> {
    parse_model(&Fixture::Figure3.text()?)
}

/// `p ↦ X_B`, `q ↦ X_R` on the `example1` element names.
pub fn example_assignment(alg: &Algebra) -> Result<Assignment> {
    Assignment::parse(alg, "p=X_B,q=X_R")
}

/// `{w0, ..., w(n-1)}`
pub fn universe(n: usize) -> Universe {
    Universe::new((0..n).map(|i| format!("w{i}"))).expect("distinct names")
}

/// Every fixture algebra: `example1`, `appendixA` and the concrete algebras on
/// up to three points.
pub fn algebra_corpus() -> Result<Vec<(String, Algebra)>> {
    let mut out = vec![("example1".to_string(), example1()?), ("appendixA".to_string(), appendix_a()?)];
    for n in 0..=3 {
        out.push((format!("2W|{n}|"), materialize(&universe(n))?.algebra));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        assert_eq!(example1().unwrap().size(), 12);
        assert_eq!(appendix_a().unwrap().size(), 8);
        assert_eq!(example2().unwrap().algebra, example1().unwrap());
        let m = figure3().unwrap();
        assert_eq!(m.frame.len(), 5);
        assert!(m.check().passed());
        let sizes: Vec<usize> = algebra_corpus().unwrap().iter().map(|(_, a)| a.size()).collect();
        assert_eq!(sizes, [12, 8, 1, 3, 9, 27]);
    }
}
