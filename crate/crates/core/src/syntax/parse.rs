//! Recursive-descent parser. Precedence from tightest: `~ A K`, `&`, `|`,
//! `->` (right associative), `<->`. The Unicode forms `¬ ∧ ∨ → ↔` are
//! accepted as aliases.

use std::fmt;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    One,
    Zero,
    Not,
    And,
    Or,
    Imp,
    Iff,
    Aware,
    Know,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::One => f.write_str("`1`"),
            Tok::Zero => f.write_str("`0`"),
            Tok::Not => f.write_str("`~`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Imp => f.write_str("`->`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::Aware => f.write_str("`A`"),
            Tok::Know => f.write_str("`K`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || c == '$'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Tokens paired with their character column (0-based).
fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |col: usize, message: String| ParseError { line: 1, column: col + 1, message };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '~' | '¬' | '!' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Imp,
            '↔' => Tok::Iff,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Imp
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                i += 2;
                Tok::Iff
            }
            '1' | '0' if !chars.get(i + 1).is_some_and(|&d| d.is_ascii_digit()) => {
                if c == '1' {
                    Tok::One
                } else {
                    Tok::Zero
                }
            }
            c if is_ident_start(c) => {
                while i + 1 < chars.len() && is_ident_char(chars[i + 1]) {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                match word.as_str() {
                    "A" => Tok::Aware,
                    "K" => Tok::Know,
                    "$" => return Err(err(start, "empty metavariable name".into())),
                    _ => Tok::Ident(word),
                }
            }
            other => return Err(err(start, format!("unexpected character `{other}`"))),
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String) -> ParseError {
        ParseError { line: 1, column: self.toks[self.pos].1 + 1, message }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::Aware => {
                self.bump();
                Ok(Formula::aware(self.unary()?))
            }
            Tok::Know => {
                self.bump();
                Ok(Formula::know(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::prop(&name))
            }
            Tok::One => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Zero => {
                self.bump();
                Ok(Formula::bottom())
            }
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(format!("expected `)`, found {}", self.peek())));
                }
                self.bump();
                Ok(inner)
            }
            other => Err(self.error(format!("expected a formula, found {other}"))),
        }
    }
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.iff()?;
    if *p.peek() != Tok::End {
        return Err(p.error(format!("unexpected {} after formula", p.peek())));
    }
    Ok(f)
}

/// One formula per line; blank lines and `#` comments are skipped. Errors
/// carry the line number.
pub fn parse_formula_file(text: &str) -> Result<Vec<Formula>, ParseError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        out.push(parse(body).map_err(|e| ParseError { line: n + 1, ..e })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn examples() {
        let (fp, fq) = (Formula::prop("p"), Formula::prop("q"));
        assert_eq!(p("~(p & ~p)"), Formula::neg(Formula::and(fp.clone(), Formula::neg(fp.clone()))));
        assert_eq!(
            p("A p -> K p"),
            Formula::or(Formula::neg(Formula::aware(fp.clone())), Formula::know(fp.clone()))
        );
        assert_eq!(p("A p -> K p"), p("~A p | K p"));
        assert_eq!(p("K(q -> p)"), Formula::know(Formula::implies(fq, fp)));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(p("p & q | r"), p("(p & q) | r"));
        assert_eq!(p("p | q -> r"), p("(p | q) -> r"));
        assert_eq!(p("p -> q -> r"), p("p -> (q -> r)"));
        assert_eq!(p("~p & q"), p("(~p) & q"));
        assert_eq!(p("K p & q"), p("(K p) & q"));
        assert_eq!(p("p -> q <-> r"), p("(p -> q) <-> r"));
        assert_eq!(p("p & q & r"), p("(p & q) & r"));
        assert_eq!(p("¬p ∧ q → p ∨ q"), p("~p & q -> p | q"));
        assert_eq!(p("0"), Formula::bottom());
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse("p & ").unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse("(p | q").unwrap_err();
        assert!(e.message.contains("expected `)`"));
        let e = parse("p ? q").unwrap_err();
        assert_eq!(e.column, 3);
        assert!(parse("p q").is_err());
        assert!(parse("A").is_err());
        assert!(parse("12").is_err());
    }

    #[test]
    fn formula_file() {
        let text = "# header\np -> q\n\n  K p # trailing\n";
        let fs = parse_formula_file(text).unwrap();
        assert_eq!(fs, vec![p("p -> q"), p("K p")]);
        let e = parse_formula_file("p\n(q\n").unwrap_err();
        assert_eq!(e.line, 2);
    }
}
