//! Piecewise-linear maps with integer affine pieces over rational
//! triangulations, and the calculus on them: compilation of MV-terms,
//! equality, composition, restriction and fixed points.

mod compile;
mod ops;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::linalg::solve_unique;
use crate::arith::{Rational, RationalPoint};
use crate::error::{Error, Result};
use crate::geometry::polytope::Form;
use crate::geometry::triangulation::{bbox, bboxes_meet};
use crate::geometry::Triangulation;

pub use compile::{compile, find_counterexample, is_tautology};
pub use ops::{compose, fixed_point_set, pwl_difference, pwl_equal, restrict};

/// `x ↦ a·x + b` with integer `a` and `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePiece {
    coefficients: Vec<BigInt>,
    constant: BigInt,
}

impl AffinePiece {
    pub fn new(coefficients: Vec<BigInt>, constant: BigInt) -> Self {
        AffinePiece {
            coefficients,
            constant,
        }
    }

    pub fn from_i64(coefficients: &[i64], constant: i64) -> Self {
        Self::new(coefficients.iter().map(|&a| a.into()).collect(), constant.into())
    }

    /// The coordinate projection `x ↦ x_i` (0-based) on `R^n`.
    pub fn projection(n: usize, i: usize) -> Self {
        let mut coefficients = vec![BigInt::zero(); n];
        coefficients[i] = BigInt::one();
        Self::new(coefficients, BigInt::zero())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn arity(&self) -> usize {
        self.coefficients.len()
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.coefficients
            .iter()
            .zip(x)
            .map(|(a, v)| Rational::from_integer(a.clone()) * v)
            .sum::<Rational>()
            + Rational::from_integer(self.constant.clone())
    }

    pub(crate) fn to_form(&self) -> Form {
        self.coefficients
            .iter()
            .chain(std::iter::once(&self.constant))
            .map(|a| Rational::from_integer(a.clone()))
            .collect()
    }

    /// `None` unless every entry is an integer.
    pub(crate) fn from_form(f: &[Rational]) -> Option<Self> {
        if !f.iter().all(|q| q.is_integer()) {
            return None;
        }
        let (c, k) = f.split_at(f.len() - 1);
        Some(Self::new(
            c.iter().map(|q| q.to_integer()).collect(),
            k[0].to_integer(),
        ))
    }

    /// `self ∘ inner`, where `inner` lists one piece per input variable.
    pub fn compose(&self, inner: &[AffinePiece]) -> AffinePiece {
        let k = inner.first().map_or(0, AffinePiece::arity);
        let mut coefficients = vec![BigInt::zero(); k];
        let mut constant = self.constant.clone();
        for (a, g) in self.coefficients.iter().zip(inner) {
            for (c, x) in coefficients.iter_mut().zip(&g.coefficients) {
                *c += a * x;
            }
            constant += a * &g.constant;
        }
        AffinePiece::new(coefficients, constant)
    }
}

impl fmt::Display for AffinePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let sign = if a < &BigInt::zero() { "-" } else if first { "" } else { "+" };
            let mag = if a < &BigInt::zero() { -a } else { a.clone() };
            if mag.is_one() {
                write!(f, "{sign}x{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}x{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant > BigInt::zero() {
            write!(f, "+{}", self.constant)
        } else if self.constant < BigInt::zero() {
            write!(f, "{}", self.constant)
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for AffinePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Z-map: a triangulated domain in `I^n` with one integer affine piece per
/// output coordinate on each maximal simplex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PwlMap {
    domain: Triangulation,
    codomain_dim: usize,
    pieces: Vec<Vec<AffinePiece>>,
}

impl PwlMap {
    /// Validates shapes, continuity across shared vertices and that vertex
    /// images lie in the unit cube.
    pub fn new(
        domain: Triangulation,
        codomain_dim: usize,
        pieces: Vec<Vec<AffinePiece>>,
    ) -> Result<Self> {
        let n = domain.ambient_dim();
        if pieces.len() != domain.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} piece lists for {} simplexes",
                pieces.len(),
                domain.len()
            )));
        }
        for rows in &pieces {
            if rows.len() != codomain_dim {
                return Err(Error::ShapeMismatch(format!(
                    "{} output rows, expected {codomain_dim}",
                    rows.len()
                )));
            }
            if let Some(r) = rows.iter().find(|r| r.arity() != n) {
                return Err(Error::ShapeMismatch(format!(
                    "piece over {} variables in dimension {n}",
                    r.arity()
                )));
            }
        }
        let map = PwlMap {
            domain,
            codomain_dim,
            pieces,
        };
        map.check_vertices()?;
        Ok(map)
    }

    fn check_vertices(&self) -> Result<()> {
        let mut images: Vec<Option<RationalPoint>> = vec![None; self.domain.vertices().len()];
        for (i, s) in self.domain.maximal_simplexes().iter().enumerate() {
            for &v in s {
                let img = self.apply(i, &self.domain.vertices()[v]);
                match &images[v] {
                    Some(prev) if *prev != img => {
                        return Err(Error::Discontinuous(self.domain.vertices()[v].clone()))
                    }
                    Some(_) => {}
                    None => {
                        if !img.in_unit_cube() {
                            return Err(Error::ImageOutsideCube(img));
                        }
                        images[v] = Some(img);
                    }
                }
            }
        }
        Ok(())
    }

    /// Assembles a map from cells that already satisfy the invariants.
    pub(crate) fn assemble(
        ambient_dim: usize,
        codomain_dim: usize,
        cells: Vec<(Vec<RationalPoint>, Vec<AffinePiece>)>,
    ) -> Self {
        let (sets, rows): (Vec<_>, Vec<_>) = cells.into_iter().unzip();
        let (domain, order) = Triangulation::canonical(ambient_dim, sets);
        let pieces = order.iter().map(|&k| rows[k].clone()).collect();
        PwlMap {
            domain,
            codomain_dim,
            pieces,
        }
    }

    /// Identity map of `|t|`.
    pub fn identity(t: Triangulation) -> Self {
        let n = t.ambient_dim();
        let rows: Vec<AffinePiece> = (0..n).map(|i| AffinePiece::projection(n, i)).collect();
        let pieces = vec![rows; t.len()];
        PwlMap {
            domain: t,
            codomain_dim: n,
            pieces,
        }
    }

    /// The map affine on each (full-dimensional) simplex of `domain` with the
    /// given vertex images.
    pub fn from_vertex_images(
        domain: Triangulation,
        image: impl Fn(&RationalPoint) -> RationalPoint,
    ) -> Result<Self> {
        let n = domain.ambient_dim();
        let mut codomain_dim = None;
        let mut pieces = Vec::with_capacity(domain.len());
        for i in 0..domain.len() {
            let verts = domain.simplex_points(i);
            if verts.len() != n + 1 {
                return Err(Error::ShapeMismatch(
                    "vertex images determine pieces only on full-dimensional simplexes".into(),
                ));
            }
            let imgs: Vec<RationalPoint> = verts.iter().map(&image).collect();
            let m = imgs[0].dim();
            if *codomain_dim.get_or_insert(m) != m || imgs.iter().any(|w| w.dim() != m) {
                return Err(Error::ShapeMismatch("vertex images of differing dimensions".into()));
            }
            let a: Vec<Vec<Rational>> = verts
                .iter()
                .map(|v| {
                    v.coords()
                        .iter()
                        .cloned()
                        .chain(std::iter::once(Rational::one()))
                        .collect()
                })
                .collect();
            let mut rows = Vec::with_capacity(m);
            for c in 0..m {
                let b: Vec<Rational> = imgs.iter().map(|w| w.coords()[c].clone()).collect();
                let form = solve_unique(&a, &b).ok_or(Error::AffinelyDependent)?;
                rows.push(AffinePiece::from_form(&form).ok_or(Error::NotIntegral { simplex: i })?);
            }
            pieces.push(rows);
        }
        Self::new(domain, codomain_dim.unwrap_or(0), pieces)
    }

    pub fn domain(&self) -> &Triangulation {
        &self.domain
    }

    pub fn ambient_dim(&self) -> usize {
        self.domain.ambient_dim()
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn pieces(&self) -> &[Vec<AffinePiece>] {
        &self.pieces
    }

    /// Image of `p` under the pieces of simplex `i` (no containment check).
    pub fn apply(&self, i: usize, p: &RationalPoint) -> RationalPoint {
        RationalPoint::new(self.pieces[i].iter().map(|r| r.evaluate(p.coords())).collect())
    }

    /// Images of the vertices of simplex `i`, in vertex order.
    pub fn simplex_image(&self, i: usize) -> Vec<RationalPoint> {
        self.domain
            .simplex_points(i)
            .iter()
            .map(|v| self.apply(i, v))
            .collect()
    }

    pub fn evaluate(&self, p: &RationalPoint) -> Result<RationalPoint> {
        if p.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: p.dim(),
            });
        }
        let i = self
            .domain
            .locate(p)
            .ok_or_else(|| Error::PointOutsideDomain(p.clone()))?;
        Ok(self.apply(i, p))
    }

    /// The same map over a triangulation `t` refining the domain: each
    /// simplex of `t` must lie in a single simplex of the domain.
    pub fn refined_to(&self, t: &Triangulation) -> Result<PwlMap> {
        let boxes: Vec<_> = (0..self.domain.len())
            .map(|i| bbox(&self.domain.simplex_points(i)))
            .collect();
        let hosts: Vec<Option<usize>> = {
            use rayon::prelude::*;
            (0..t.len())
                .into_par_iter()
                .map(|j| {
                    let pts = t.simplex_points(j);
                    let b = bbox(&pts);
                    (0..self.domain.len()).find(|&i| {
                        bboxes_meet(&b, &boxes[i]) && {
                            let host = self.domain.simplex(i);
                            pts.iter().all(|p| host.contains(p))
                        }
                    })
                })
                .collect()
        };
        let mut pieces = Vec::with_capacity(t.len());
        for h in hosts {
            pieces.push(self.pieces[h.ok_or(Error::NotASubset)?].clone());
        }
        Ok(PwlMap {
            domain: t.clone(),
            codomain_dim: self.codomain_dim,
            pieces,
        })
    }
}

/// Exact image of `p` under `f`.
pub fn evaluate_map(f: &PwlMap, p: &RationalPoint) -> Result<RationalPoint> {
    f.evaluate(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::RationalSimplex;

    fn pt(c: &[(i64, i64)]) -> RationalPoint {
        RationalPoint::from_fractions(c)
    }

    #[test]
    fn piece_composition() {
        // (1 - x) after (2x) is 1 - 2x.
        let outer = AffinePiece::from_i64(&[-1], 1);
        let inner = AffinePiece::from_i64(&[2], 0);
        assert_eq!(outer.compose(&[inner]), AffinePiece::from_i64(&[-2], 1));
        assert_eq!(AffinePiece::from_i64(&[-1, 3], 1).to_string(), "-x1+3x2+1");
    }

    #[test]
    fn vertex_images_determine_integer_pieces() {
        let t = Triangulation::cube(1);
        let f = PwlMap::from_vertex_images(t.clone(), |v| {
            RationalPoint::new(vec![Rational::one() - &v.coords()[0]])
        })
        .unwrap();
        assert_eq!(f.pieces()[0], vec![AffinePiece::from_i64(&[-1], 1)]);
        let half = Triangulation::from_simplexes(
            1,
            [RationalSimplex::new(vec![pt(&[(0, 1)]), pt(&[(1, 1)])]).unwrap()],
        )
        .unwrap();
        assert_eq!(
            PwlMap::from_vertex_images(half, |v| RationalPoint::new(vec![&v.coords()[0] / Rational::from_integer(2.into())])),
            Err(Error::NotIntegral { simplex: 0 })
        );
    }

    #[test]
    fn discontinuity_is_detected() {
        let t = crate::geometry::refine_along_hyperplane(
            &Triangulation::cube(1),
            &[Rational::one(), -crate::arith::rat(1, 2)],
        )
        .unwrap();
        let pieces = vec![
            vec![AffinePiece::from_i64(&[1], 0)],
            vec![AffinePiece::from_i64(&[0], 0)],
        ];
        assert_eq!(
            PwlMap::new(t, 1, pieces),
            Err(Error::Discontinuous(pt(&[(1, 2)])))
        );
    }

    #[test]
    fn identity_evaluates_to_input() {
        let id = PwlMap::identity(Triangulation::cube(2));
        let p = pt(&[(1, 3), (5, 7)]);
        assert_eq!(evaluate_map(&id, &p).unwrap(), p);
        assert_eq!(
            id.evaluate(&pt(&[(3, 2), (0, 1)])),
            Err(Error::PointOutsideDomain(pt(&[(3, 2), (0, 1)])))
        );
    }
}
