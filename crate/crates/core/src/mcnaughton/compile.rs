use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use super::{AffinePiece, PwlMap};
use crate::arith::{Rational, RationalPoint};
use crate::error::{Error, Result};
use crate::geometry::polytope::{constant_form, eval_form, Form};
use crate::geometry::refine::{split_simplexes, Side};
use crate::geometry::Triangulation;
use crate::lang::MvTerm;

#[derive(Clone, Copy)]
enum Node {
    Var(usize),
    Const(bool),
    Neg(usize),
    OPlus(usize, usize),
    OTimes(usize, usize),
    Meet(usize, usize),
    Join(usize, usize),
}

/// Post-order arena with shared subterms.
struct Arena<'a> {
    nodes: Vec<Node>,
    memo: HashMap<&'a MvTerm, usize>,
}

impl<'a> Arena<'a> {
    fn add(&mut self, t: &'a MvTerm) -> usize {
        if let Some(&k) = self.memo.get(t) {
            return k;
        }
        let node = match t {
            MvTerm::Var(i) => Node::Var(*i - 1),
            MvTerm::Zero => Node::Const(false),
            MvTerm::One => Node::Const(true),
            MvTerm::Neg(a) => Node::Neg(self.add(a)),
            MvTerm::OPlus(a, b) => Node::OPlus(self.add(a), self.add(b)),
            MvTerm::OTimes(a, b) => Node::OTimes(self.add(a), self.add(b)),
            MvTerm::Meet(a, b) => Node::Meet(self.add(a), self.add(b)),
            MvTerm::Join(a, b) => Node::Join(self.add(a), self.add(b)),
        };
        self.nodes.push(node);
        let k = self.nodes.len() - 1;
        self.memo.insert(t, k);
        k
    }
}

fn add(a: &[Rational], b: &[Rational]) -> Form {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Rational], b: &[Rational]) -> Form {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Compiles terms into the Z-map `I^n → I^m` of their McNaughton functions.
///
/// Starting from the standard triangulation of the cube, every node is
/// evaluated as an affine form per simplex; truncations and lattice
/// operations split a simplex along the locus where the two candidate forms
/// meet, but only when that locus crosses the simplex's interior.
pub fn compile(ts: &[MvTerm], n: usize) -> Result<PwlMap> {
    if n == 0 {
        return Err(Error::ShapeMismatch("ambient dimension must be positive".into()));
    }
    if let Some(t) = ts.iter().find(|t| t.arity() > n) {
        return Err(Error::Arity {
            arity: t.arity(),
            dim: n,
        });
    }
    let mut arena = Arena {
        nodes: Vec::new(),
        memo: HashMap::new(),
    };
    let roots: Vec<usize> = ts.iter().map(|t| arena.add(t)).collect();

    let cube = Triangulation::cube(n);
    let mut simplexes: Vec<Vec<RationalPoint>> = (0..cube.len()).map(|i| cube.simplex_points(i)).collect();
    let mut forms: Vec<Vec<Form>> = vec![Vec::with_capacity(arena.nodes.len()); simplexes.len()];
    let one = constant_form(n + 1, Rational::one());
    let zero = constant_form(n + 1, Rational::zero());

    for node in &arena.nodes {
        // Per simplex: the splitting functional and the forms on each side.
        let choices: Vec<(Form, Form, Form)> = forms
            .iter()
            .map(|f| match *node {
                Node::Var(i) => {
                    let mut v = zero.clone();
                    v[i] = Rational::one();
                    (zero.clone(), v.clone(), v)
                }
                Node::Const(c) => {
                    let v = if c { one.clone() } else { zero.clone() };
                    (zero.clone(), v.clone(), v)
                }
                Node::Neg(a) => {
                    let v = sub(&one, &f[a]);
                    (zero.clone(), v.clone(), v)
                }
                Node::OPlus(a, b) => {
                    let s = add(&f[a], &f[b]);
                    (sub(&s, &one), s, one.clone())
                }
                Node::OTimes(a, b) => {
                    let s = sub(&add(&f[a], &f[b]), &one);
                    (s.clone(), zero.clone(), s)
                }
                Node::Meet(a, b) => (sub(&f[a], &f[b]), f[a].clone(), f[b].clone()),
                Node::Join(a, b) => (sub(&f[a], &f[b]), f[b].clone(), f[a].clone()),
            })
            .collect();

        let mut cut: Vec<Option<Form>> = Vec::with_capacity(simplexes.len());
        let mut whole: Vec<Side> = Vec::with_capacity(simplexes.len());
        for (s, (h, _, _)) in simplexes.iter().zip(&choices) {
            let vals: Vec<Rational> = s.iter().map(|v| eval_form(h, v.coords())).collect();
            let below = vals.iter().any(Signed::is_negative);
            let above = vals.iter().any(Signed::is_positive);
            if below && above {
                cut.push(Some(h.clone()));
                whole.push(Side::Whole);
            } else {
                cut.push(None);
                whole.push(if below { Side::Below } else { Side::Above });
            }
        }
        if cut.iter().all(Option::is_none) {
            for ((f, (_, lo, hi)), side) in forms.iter_mut().zip(choices).zip(whole) {
                f.push(if side == Side::Below { lo } else { hi });
            }
            continue;
        }
        let pieces = split_simplexes(&simplexes, &cut);
        let mut next_simplexes = Vec::with_capacity(pieces.len());
        let mut next_forms = Vec::with_capacity(pieces.len());
        for (parent, side, pts) in pieces {
            let side = if side == Side::Whole { whole[parent] } else { side };
            let (_, lo, hi) = &choices[parent];
            let mut f = forms[parent].clone();
            f.push(if side == Side::Below { lo.clone() } else { hi.clone() });
            next_simplexes.push(pts);
            next_forms.push(f);
        }
        simplexes = next_simplexes;
        forms = next_forms;
    }

    let mut cells = Vec::with_capacity(simplexes.len());
    for (k, (s, f)) in simplexes.into_iter().zip(forms).enumerate() {
        let rows = roots
            .iter()
            .map(|&r| AffinePiece::from_form(&f[r]).ok_or(Error::NotIntegral { simplex: k }))
            .collect::<Result<Vec<_>>>()?;
        cells.push((s, rows));
    }
    Ok(PwlMap::assemble(n, ts.len(), cells))
}

/// Least vertex (lexicographically) of the compiled domain where the term's
/// value differs from 1. Since the function is affine on each simplex, the
/// term is a tautology iff this is `None`.
pub fn find_counterexample(t: &MvTerm) -> Result<Option<RationalPoint>> {
    let f = compile(std::slice::from_ref(t), t.arity().max(1))?;
    let one = RationalPoint::new(vec![Rational::one()]);
    let mut bad: Option<RationalPoint> = None;
    for i in 0..f.domain().len() {
        for v in f.domain().simplex_points(i) {
            if f.apply(i, &v) != one && bad.as_ref().is_none_or(|b| v < *b) {
                bad = Some(v);
            }
        }
    }
    Ok(bad)
}

pub fn is_tautology(t: &MvTerm) -> Result<bool> {
    Ok(find_counterexample(t)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::lang::parse;

    fn pt(c: &[(i64, i64)]) -> RationalPoint {
        RationalPoint::from_fractions(c)
    }

    fn terms(src: &[&str]) -> Vec<MvTerm> {
        src.iter().map(|s| parse(s).unwrap()).collect()
    }

    #[test]
    fn half_meet_has_two_pieces() {
        let f = compile(&terms(&["x1 /\\ ~x1"]), 1).unwrap();
        assert_eq!(f.domain().vertices(), &[pt(&[(0, 1)]), pt(&[(1, 2)]), pt(&[(1, 1)])]);
        assert_eq!(
            f.pieces(),
            &[
                vec![AffinePiece::from_i64(&[1], 0)],
                vec![AffinePiece::from_i64(&[-1], 1)]
            ]
        );
    }

    #[test]
    fn l_fold_pieces() {
        let f = compile(&terms(&["x1 (-) x2", "x2 (-) x1"]), 2).unwrap();
        assert_eq!(f.domain(), &Triangulation::cube(2));
        let above = f.evaluate(&pt(&[(1, 4), (1, 2)])).unwrap();
        let below = f.evaluate(&pt(&[(1, 2), (1, 4)])).unwrap();
        assert_eq!(above, pt(&[(0, 1), (1, 4)]));
        assert_eq!(below, pt(&[(1, 4), (0, 1)]));
    }

    #[test]
    fn constant_term() {
        let f = compile(&terms(&["1"]), 1).unwrap();
        assert_eq!(f.pieces(), &[vec![AffinePiece::from_i64(&[0], 1)]]);
    }

    #[test]
    fn compiled_map_matches_evaluator() {
        let t = parse("(x1 (+) x2) (.) ~(x1 /\\ x2) \\/ (x2 (-) x1 (+) x2)").unwrap();
        let f = compile(std::slice::from_ref(&t), 2).unwrap();
        for a in 0..=7 {
            for b in 0..=5 {
                let p = pt(&[(a, 7), (b, 5)]);
                assert_eq!(f.evaluate(&p).unwrap().coords()[0], t.evaluate(&p).unwrap());
            }
        }
    }

    #[test]
    fn arity_is_checked() {
        assert_eq!(
            compile(&terms(&["x3"]), 2),
            Err(Error::Arity { arity: 3, dim: 2 })
        );
    }

    #[test]
    fn tautologies() {
        assert!(is_tautology(&parse("~~x1 <-> x1").unwrap()).unwrap());
        assert!(is_tautology(&parse("x1 (+) ~x1").unwrap()).unwrap());
        assert_eq!(
            find_counterexample(&parse("x1 \\/ ~x1").unwrap()).unwrap(),
            Some(pt(&[(1, 2)]))
        );
        assert_eq!(
            find_counterexample(&parse("x1").unwrap()).unwrap().map(|p| p.coords()[0].clone()),
            Some(rat(0, 1))
        );
    }
}
