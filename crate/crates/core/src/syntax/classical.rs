//! Truth tables for modal-free formulas.

use super::{eval, props_of, Formula, Prop, Semantics};
use crate::error::{Error, Result};

/// Truth tables as bit masks: bit `r` is the value under row `r`, where row
/// `r` makes `props[i]` true iff bit `i` of `r` is set.
#[derive(Debug, Clone)]
pub struct ClassicalSemantics {
    props: Vec<Prop>,
    full: u64,
}

impl ClassicalSemantics {
    pub const MAX_PROPS: usize = 6;

    pub fn new(props: Vec<Prop>) -> Result<Self> {
        if props.len() > Self::MAX_PROPS {
            return Err(Error::TooManyProps { count: props.len(), limit: Self::MAX_PROPS });
        }
        let rows = 1u32 << props.len();
        let full = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
        Ok(ClassicalSemantics { props, full })
    }

    pub fn is_tautology(&self, v: u64) -> bool {
        v == self.full
    }
}

impl Semantics for ClassicalSemantics {
    type Value = u64;

    fn prop(&self, p: &Prop) -> Option<u64> {
        let i = self.props.iter().position(|q| q == p)?;
        let rows = 1usize << self.props.len();
        Some((0..rows).filter(|r| r >> i & 1 == 1).fold(0, |m, r| m | 1 << r))
    }
    fn top(&self) -> u64 {
        self.full
    }
    fn neg(&self, a: &u64) -> u64 {
        self.full & !a
    }
    fn and(&self, a: &u64, b: &u64) -> u64 {
        a & b
    }
    fn aware(&self, _: &u64) -> u64 {
        unreachable!("classical semantics has no modalities")
    }
    fn know(&self, _: &u64) -> u64 {
        unreachable!("classical semantics has no modalities")
    }
}

/// Truth-table check over all `2^|P(φ)|` rows.
pub fn classical_tautology(f: &Formula) -> Result<bool> {
    if !f.is_modal_free() {
        return Err(Error::Input(format!("`{f}` contains a modality")));
    }
    let s = ClassicalSemantics::new(props_of(f).into_iter().collect())?;
    Ok(s.is_tautology(eval(&s, f)?))
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn taut(s: &str) -> bool {
        classical_tautology(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        assert!(taut("p | ~p"));
        assert!(taut("p -> (q -> p)"));
        assert!(!taut("p -> q"));
        assert!(taut("1"));
        assert!(!taut("0"));
        assert!(taut("(p -> q) <-> (~q -> ~p)"));
    }

    #[test]
    fn modal_input_is_rejected() {
        assert!(classical_tautology(&parse("K p | ~K p").unwrap()).is_err());
    }
}
