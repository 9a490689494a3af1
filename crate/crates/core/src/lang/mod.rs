//! MV-terms of Łukasiewicz infinite-valued logic: syntax tree, parser and the
//! exact evaluator on the standard MV-algebra `[0,1]`.

mod parser;

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{Rational, RationalPoint};
use crate::error::{Error, Result};

pub use parser::parse;

/// Normalized MV-term. Derived connectives (`(-)`, `->`, `<->`) are rewritten
/// into this core by the constructors below, so consumers only see these
/// node kinds.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MvTerm {
    /// 1-based variable index.
    Var(usize),
    Zero,
    One,
    Neg(Box<MvTerm>),
    OPlus(Box<MvTerm>, Box<MvTerm>),
    OTimes(Box<MvTerm>, Box<MvTerm>),
    Meet(Box<MvTerm>, Box<MvTerm>),
    Join(Box<MvTerm>, Box<MvTerm>),
}

impl MvTerm {
    pub fn var(i: usize) -> MvTerm {
        assert!(i >= 1, "variable indices are 1-based");
        MvTerm::Var(i)
    }

    pub fn neg(t: MvTerm) -> MvTerm {
        MvTerm::Neg(Box::new(t))
    }

    pub fn oplus(t: MvTerm, u: MvTerm) -> MvTerm {
        MvTerm::OPlus(Box::new(t), Box::new(u))
    }

    pub fn otimes(t: MvTerm, u: MvTerm) -> MvTerm {
        MvTerm::OTimes(Box::new(t), Box::new(u))
    }

    pub fn meet(t: MvTerm, u: MvTerm) -> MvTerm {
        MvTerm::Meet(Box::new(t), Box::new(u))
    }

    pub fn join(t: MvTerm, u: MvTerm) -> MvTerm {
        MvTerm::Join(Box::new(t), Box::new(u))
    }

    /// `t (-) u` = `t (.) ~u`.
    pub fn minus(t: MvTerm, u: MvTerm) -> MvTerm {
        MvTerm::otimes(t, MvTerm::neg(u))
    }

    /// `t -> u` = `~t (+) u`.
    pub fn implies(t: MvTerm, u: MvTerm) -> MvTerm {
        MvTerm::oplus(MvTerm::neg(t), u)
    }

    /// `t <-> u` = `(t -> u) (.) (u -> t)`.
    pub fn iff(t: MvTerm, u: MvTerm) -> MvTerm {
        MvTerm::otimes(
            MvTerm::implies(t.clone(), u.clone()),
            MvTerm::implies(u, t),
        )
    }

    /// Largest variable index occurring in the term, 0 for closed terms.
    pub fn arity(&self) -> usize {
        match self {
            MvTerm::Var(i) => *i,
            MvTerm::Zero | MvTerm::One => 0,
            MvTerm::Neg(t) => t.arity(),
            MvTerm::OPlus(a, b) | MvTerm::OTimes(a, b) | MvTerm::Meet(a, b) | MvTerm::Join(a, b) => {
                a.arity().max(b.arity())
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            MvTerm::Var(_) | MvTerm::Zero | MvTerm::One => 0,
            MvTerm::Neg(t) => 1 + t.depth(),
            MvTerm::OPlus(a, b) | MvTerm::OTimes(a, b) | MvTerm::Meet(a, b) | MvTerm::Join(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Value of the McNaughton function of the term at `p`.
    pub fn evaluate(&self, p: &RationalPoint) -> Result<Rational> {
        let arity = self.arity();
        if p.dim() < arity {
            return Err(Error::Arity {
                arity,
                dim: p.dim(),
            });
        }
        Ok(self.eval_unchecked(p.coords()))
    }

    fn eval_unchecked(&self, x: &[Rational]) -> Rational {
        match self {
            MvTerm::Var(i) => x[*i - 1].clone(),
            MvTerm::Zero => Rational::zero(),
            MvTerm::One => Rational::one(),
            MvTerm::Neg(t) => Rational::one() - t.eval_unchecked(x),
            MvTerm::OPlus(a, b) => {
                let s = a.eval_unchecked(x) + b.eval_unchecked(x);
                s.min(Rational::one())
            }
            MvTerm::OTimes(a, b) => {
                let s = a.eval_unchecked(x) + b.eval_unchecked(x) - Rational::one();
                s.max(Rational::zero())
            }
            MvTerm::Meet(a, b) => a.eval_unchecked(x).min(b.eval_unchecked(x)),
            MvTerm::Join(a, b) => a.eval_unchecked(x).max(b.eval_unchecked(x)),
        }
    }
}

/// Convenience wrapper around [`MvTerm::evaluate`].
pub fn evaluate(t: &MvTerm, p: &RationalPoint) -> Result<Rational> {
    t.evaluate(p)
}

impl fmt::Display for MvTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MvTerm::Var(i) => write!(f, "x{i}"),
            MvTerm::Zero => write!(f, "0"),
            MvTerm::One => write!(f, "1"),
            MvTerm::Neg(t) => match **t {
                MvTerm::Var(_) | MvTerm::Zero | MvTerm::One | MvTerm::Neg(_) => write!(f, "~{t}"),
                _ => write!(f, "~({t})"),
            },
            MvTerm::OPlus(a, b) => write!(f, "({a} (+) {b})"),
            MvTerm::OTimes(a, b) => write!(f, "({a} (.) {b})"),
            MvTerm::Meet(a, b) => write!(f, "({a} /\\ {b})"),
            MvTerm::Join(a, b) => write!(f, "({a} \\/ {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn pt(c: &[(i64, i64)]) -> RationalPoint {
        RationalPoint::from_fractions(c)
    }

    #[test]
    fn evaluation_examples() {
        let x = MvTerm::var(1);
        let y = MvTerm::var(2);
        assert_eq!(MvTerm::neg(x.clone()).evaluate(&pt(&[(1, 3)])).unwrap(), rat(2, 3));
        assert_eq!(
            MvTerm::minus(x.clone(), y).evaluate(&pt(&[(1, 2), (1, 4)])).unwrap(),
            rat(1, 4)
        );
        assert_eq!(
            MvTerm::oplus(x.clone(), x).evaluate(&pt(&[(3, 4)])).unwrap(),
            rat(1, 1)
        );
    }

    #[test]
    fn arity_examples() {
        assert_eq!(MvTerm::One.arity(), 0);
        assert_eq!(MvTerm::meet(MvTerm::var(1), MvTerm::neg(MvTerm::var(1))).arity(), 1);
        assert_eq!(MvTerm::otimes(MvTerm::var(3), MvTerm::var(1)).arity(), 3);
    }

    #[test]
    fn short_point_is_an_arity_error() {
        let t = MvTerm::var(2);
        assert_eq!(
            t.evaluate(&pt(&[(1, 2)])),
            Err(Error::Arity { arity: 2, dim: 1 })
        );
    }

    #[test]
    fn display_reparses() {
        let t = parse("~(x1 /\\ x2) \\/ ~~x1 (.) 0 -> x2").unwrap();
        assert_eq!(parse(&t.to_string()).unwrap(), t);
    }
}
