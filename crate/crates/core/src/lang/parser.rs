//! Recursive-descent parser for the ASCII term syntax.
//!
//! Binding strength, tightest first: `~`; `(.)` `(+)` `(-)`; `/\`; `\/`;
//! `->`; `<->`. Binary connectives associate to the left.

use super::MvTerm;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Var(usize),
    Zero,
    One,
    Neg,
    OPlus,
    OTimes,
    OMinus,
    Meet,
    Join,
    Implies,
    Iff,
    LParen,
    RParen,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let rest = &text[i..];
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let fixed: &[(&str, Tok)] = &[
            ("<->", Tok::Iff),
            ("->", Tok::Implies),
            ("(+)", Tok::OPlus),
            ("(.)", Tok::OTimes),
            ("(-)", Tok::OMinus),
            ("/\\", Tok::Meet),
            ("\\/", Tok::Join),
            ("~", Tok::Neg),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("0", Tok::Zero),
            ("1", Tok::One),
        ];
        if let Some((s, tok)) = fixed.iter().find(|(s, _)| rest.starts_with(s)) {
            out.push((*tok, i));
            i += s.len();
            continue;
        }
        if c == b'x' {
            let digits: String = rest[1..].chars().take_while(char::is_ascii_digit).collect();
            if digits.is_empty() {
                return Err(syntax(i, "expected variable index after `x`"));
            }
            let index: usize = digits
                .parse()
                .map_err(|_| syntax(i, "variable index too large"))?;
            if index == 0 {
                return Err(syntax(i, "variable indices start at 1"));
            }
            out.push((Tok::Var(index), i));
            i += 1 + digits.len();
            continue;
        }
        let ch = rest.chars().next().unwrap_or('?');
        return Err(syntax(i, format!("unexpected character `{ch}`")));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|t| t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn binary_level(
        &mut self,
        ops: &[Tok],
        next: fn(&mut Self) -> Result<MvTerm>,
        build: fn(Tok, MvTerm, MvTerm) -> MvTerm,
    ) -> Result<MvTerm> {
        let mut lhs = next(self)?;
        while let Some(op) = self.peek().filter(|t| ops.contains(t)) {
            self.pos += 1;
            let rhs = next(self)?;
            lhs = build(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn iff(&mut self) -> Result<MvTerm> {
        self.binary_level(&[Tok::Iff], Self::implies, |_, a, b| MvTerm::iff(a, b))
    }

    fn implies(&mut self) -> Result<MvTerm> {
        self.binary_level(&[Tok::Implies], Self::join, |_, a, b| MvTerm::implies(a, b))
    }

    fn join(&mut self) -> Result<MvTerm> {
        self.binary_level(&[Tok::Join], Self::meet, |_, a, b| MvTerm::join(a, b))
    }

    fn meet(&mut self) -> Result<MvTerm> {
        self.binary_level(&[Tok::Meet], Self::monoid, |_, a, b| MvTerm::meet(a, b))
    }

    fn monoid(&mut self) -> Result<MvTerm> {
        self.binary_level(
            &[Tok::OPlus, Tok::OTimes, Tok::OMinus],
            Self::unary,
            |op, a, b| match op {
                Tok::OPlus => MvTerm::oplus(a, b),
                Tok::OTimes => MvTerm::otimes(a, b),
                _ => MvTerm::minus(a, b),
            },
        )
    }

    fn unary(&mut self) -> Result<MvTerm> {
        let at = self.offset();
        match self.peek() {
            Some(Tok::Neg) => {
                self.pos += 1;
                Ok(MvTerm::neg(self.unary()?))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(MvTerm::Var(i))
            }
            Some(Tok::Zero) => {
                self.pos += 1;
                Ok(MvTerm::Zero)
            }
            Some(Tok::One) => {
                self.pos += 1;
                Ok(MvTerm::One)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.iff()?;
                if self.peek() != Some(Tok::RParen) {
                    return Err(syntax(self.offset(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(syntax(at, "expected a term")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses a term, desugaring `(-)`, `->` and `<->`.
pub fn parse(text: &str) -> Result<MvTerm> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
    };
    let term = p.iff()?;
    if p.pos != toks.len() {
        return Err(syntax(p.offset(), "trailing input"));
    }
    Ok(term)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MvTerm {
        MvTerm::var(i)
    }

    #[test]
    fn meet_with_negation() {
        assert_eq!(
            parse("x1 /\\ ~x1").unwrap(),
            MvTerm::meet(x(1), MvTerm::neg(x(1)))
        );
    }

    #[test]
    fn truncated_difference_desugars() {
        assert_eq!(
            parse("x1 (-) x2").unwrap(),
            MvTerm::otimes(x(1), MvTerm::neg(x(2)))
        );
    }

    #[test]
    fn biconditional_desugars() {
        let half = MvTerm::oplus(MvTerm::neg(x(1)), x(1));
        assert_eq!(parse("x1 <-> x1").unwrap(), MvTerm::otimes(half.clone(), half));
    }

    #[test]
    fn precedence_and_associativity() {
        // ~ binds tighter than (+), which binds tighter than /\ and \/.
        assert_eq!(
            parse("~x1 (+) x2 /\\ x3 \\/ x1").unwrap(),
            MvTerm::join(
                MvTerm::meet(MvTerm::oplus(MvTerm::neg(x(1)), x(2)), x(3)),
                x(1)
            )
        );
        assert_eq!(
            parse("x1 (.) x2 (+) x3").unwrap(),
            MvTerm::oplus(MvTerm::otimes(x(1), x(2)), x(3))
        );
        assert_eq!(
            parse("x1 -> x2 -> x3").unwrap(),
            MvTerm::implies(MvTerm::implies(x(1), x(2)), x(3))
        );
        assert_eq!(parse("((x1))").unwrap(), x(1));
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(
            parse("x0").unwrap_err(),
            Error::Syntax { offset: 0, message: "variable indices start at 1".into() }
        );
        assert!(matches!(parse("x1 /\\").unwrap_err(), Error::Syntax { offset: 5, .. }));
        assert!(matches!(parse("x1 ? x2").unwrap_err(), Error::Syntax { offset: 3, .. }));
        assert!(matches!(parse("(x1").unwrap_err(), Error::Syntax { offset: 3, .. }));
        assert!(matches!(parse("x1 x2").unwrap_err(), Error::Syntax { offset: 3, .. }));
        assert!(matches!(parse("").unwrap_err(), Error::Syntax { offset: 0, .. }));
    }
}
