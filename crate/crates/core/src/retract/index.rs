use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{multiplicity, z_homeomorphism_onto, MultiplicityReport, ZRetraction};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::geometry::polytope::simplex_meet;
use crate::geometry::refine::intersect_cells;
use crate::geometry::triangulation::{bbox, bboxes_meet};
use crate::geometry::{is_subset, Triangulation};
use crate::mcnaughton::PwlMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperBound {
    Finite(BigUint),
    Unbounded,
}

/// Bounds on the number of pairwise disjoint copies of the range that the
/// algebra of a retraction can be split over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexBounds {
    pub lower: BigUint,
    pub upper: UpperBound,
    /// Smallest measure of a connected component of the range.
    pub lambda: Rational,
    /// Number of connected components of the range.
    pub components: usize,
}

fn binomial(n: &BigUint, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        let i = BigUint::from(i);
        if &i >= n {
            return BigUint::zero();
        }
        acc = acc * (n - &i) / (i + 1u32);
    }
    acc
}

/// Two copies can coexist if their interiors are disjoint and they agree
/// wherever their domains touch.
fn copies_compatible(f: &PwlMap, g: &PwlMap) -> bool {
    let (a, b) = (f.domain(), g.domain());
    let n = a.ambient_dim();
    if intersect_cells(a, b).0.iter().any(|c| c.points.len() == n + 1) {
        return false;
    }
    for i in 0..a.len() {
        let pa = a.simplex_points(i);
        let ba = bbox(&pa);
        for j in 0..b.len() {
            let pb = b.simplex_points(j);
            if !bboxes_meet(&ba, &bbox(&pb)) {
                continue;
            }
            if simplex_meet(&pa, &pb).iter().any(|y| f.apply(i, y) != g.apply(j, y)) {
                return false;
            }
        }
    }
    true
}

fn max_clique_with_first(compat: &[Vec<bool>]) -> usize {
    fn grow(compat: &[Vec<bool>], chosen: &mut Vec<usize>, from: usize, best: &mut usize) {
        *best = (*best).max(chosen.len());
        if chosen.len() + (compat.len() - from) <= *best {
            return;
        }
        for c in from..compat.len() {
            if chosen.iter().all(|&k| compat[k][c]) {
                chosen.push(c);
                grow(compat, chosen, c + 1, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    grow(compat, &mut vec![0], 1, &mut best);
    best
}

/// Lower and upper bounds for the index of the range of `sigma`.
///
/// The upper bound is `C(⌊1/λ⌋, k)` for `k` components of least measure `λ`;
/// a range that is not a closed domain gives no bound. The lower bound is the
/// larger of the multiplicity and the largest family of mutually compatible
/// copies among `candidate_copies` (each a Z-homeomorphism from a part of the
/// cube onto the range) together with the range itself. In dimension one both
/// bounds collapse to 2 when `λ ≤ 1/2` and to 1 otherwise.
pub fn index_bounds(sigma: &ZRetraction, candidate_copies: &[PwlMap]) -> Result<IndexBounds> {
    let n = sigma.ambient_dim();
    let range = sigma.range();
    if !range.is_closed_domain() {
        return Ok(IndexBounds {
            lower: BigUint::one(),
            upper: UpperBound::Unbounded,
            lambda: Rational::zero(),
            components: range.components().len(),
        });
    }
    let comps = range.components();
    let lambda = comps
        .iter()
        .map(|c| c.iter().map(|&i| range.simplex(i).lebesgue_measure_ndim()).sum::<Rational>())
        .min()
        .expect("a closed domain has a component");
    let k = comps.len();
    let whole = (lambda.recip()).floor().to_integer().to_biguint().expect("positive");
    if n == 1 {
        let iota = if lambda <= Rational::new(1.into(), 2.into()) { 2u32 } else { 1 };
        return Ok(IndexBounds {
            lower: BigUint::from(iota),
            upper: UpperBound::Finite(BigUint::from(iota)),
            lambda,
            components: k,
        });
    }
    let upper = binomial(&whole, k);

    let cube = Triangulation::cube(n);
    for c in candidate_copies {
        if c.ambient_dim() != n || c.codomain_dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: c.codomain_dim(),
            });
        }
    }
    let valid: Vec<PwlMap> = candidate_copies
        .par_iter()
        .map(|c| -> Result<Option<PwlMap>> {
            let ok = is_subset(c.domain(), &cube) && z_homeomorphism_onto(c, range)?;
            Ok(ok.then(|| c.clone()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut copies = vec![PwlMap::identity(range.clone())];
    copies.extend(valid);
    let compat: Vec<Vec<bool>> = (0..copies.len())
        .into_par_iter()
        .map(|i| {
            (0..copies.len())
                .map(|j| i != j && copies_compatible(&copies[i], &copies[j]))
                .collect()
        })
        .collect();
    let clique = max_clique_with_first(&compat);
    let mult = match multiplicity(sigma)? {
        MultiplicityReport::Finite { count, .. } => count,
        MultiplicityReport::Infinite { .. } => 1,
    };
    let lower = BigUint::from(clique.max(mult));
    Ok(IndexBounds {
        lower,
        upper: UpperBound::Finite(upper),
        lambda,
        components: k,
    })
}

impl UpperBound {
    pub fn to_u64(&self) -> Option<u64> {
        match self {
            UpperBound::Finite(b) => b.to_u64(),
            UpperBound::Unbounded => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::lang::parse;
    use crate::retract::verify_z_retraction;

    fn retraction(src: &[&str]) -> ZRetraction {
        verify_z_retraction(&src.iter().map(|s| parse(s).unwrap()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(&BigUint::from(5u32), 2), BigUint::from(10u32));
        assert_eq!(binomial(&BigUint::from(2u32), 3), BigUint::zero());
        assert_eq!(binomial(&BigUint::from(4u32), 0), BigUint::one());
    }

    #[test]
    fn one_dimensional_closed_form() {
        let b = index_bounds(&retraction(&["x1 /\\ ~x1"]), &[]).unwrap();
        assert_eq!(b.lambda, rat(1, 2));
        assert_eq!(b.lower, BigUint::from(2u32));
        assert_eq!(b.upper, UpperBound::Finite(BigUint::from(2u32)));
        let t = index_bounds(&retraction(&["x1 /\\ (~x1 (+) ~x1)"]), &[]).unwrap();
        assert_eq!(t.lambda, rat(2, 3));
        assert_eq!(t.lower, BigUint::one());
    }

    #[test]
    fn unbounded_for_thin_ranges() {
        let b = index_bounds(&retraction(&["x1", "0"]), &[]).unwrap();
        assert_eq!(b.upper, UpperBound::Unbounded);
        assert_eq!(b.lower, BigUint::one());
    }

    #[test]
    fn square_halves() {
        let s = retraction(&["x1 /\\ ~x1", "x2"]);
        let b = index_bounds(&s, &[]).unwrap();
        assert_eq!(b.lambda, rat(1, 2));
        assert_eq!(b.components, 1);
        assert_eq!(b.upper, UpperBound::Finite(BigUint::from(2u32)));
        assert_eq!(b.lower, BigUint::from(2u32));
    }
}
