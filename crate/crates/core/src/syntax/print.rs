//! Canonical printer. Abbreviations are not recovered: `p | q` prints as
//! `~(~p & ~q)`. Parsing the output gives back the same tree.

use std::fmt;

use super::Formula;

impl Formula {
    fn fmt_unary_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::And(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Prop(p) => write!(f, "{p}"),
            Formula::Top => f.write_str("1"),
            Formula::Neg(a) => {
                f.write_str("~")?;
                a.fmt_unary_operand(f)
            }
            Formula::Aware(a) | Formula::Know(a) => {
                let op = if matches!(self, Formula::Aware(_)) { "A" } else { "K" };
                match **a {
                    Formula::And(..) => write!(f, "{op} ({a})"),
                    _ => write!(f, "{op} {a}"),
                }
            }
            Formula::And(a, b) => {
                // `&` associates to the left, so only a right conjunct needs parentheses.
                write!(f, "{a} & ")?;
                b.fmt_unary_operand(f)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;

    #[test]
    fn canonical_forms() {
        let show = |s: &str| parse(s).unwrap().to_string();
        assert_eq!(show("p | q"), "~(~p & ~q)");
        assert_eq!(show("A p -> K p"), "~(~~A p & ~K p)");
        assert_eq!(show("p & (q & r)"), "p & (q & r)");
        assert_eq!(show("(p & q) & r"), "p & q & r");
        assert_eq!(show("K (p & q)"), "K (p & q)");
        assert_eq!(show("0"), "~1");
        assert_eq!(show("  A   K ~p "), "A K ~p");
    }
}
