//! Exact rational scalars, rational points of the cube and their integer
//! homogeneous correspondents.

pub mod lattice;
pub mod linalg;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use lattice::{is_basis_extendable, maximal_minor_gcd, smith_invariants};

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn in_unit_interval(q: &Rational) -> bool {
    !q.is_negative() && *q <= Rational::one()
}

/// A rational point of `R^n`. Membership in the unit cube is a separate
/// predicate; intermediate constructions may leave the cube.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(Vec<Rational>);

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalPoint(coords)
    }

    /// Point of the cube; rejects coordinates outside `[0,1]`.
    pub fn in_cube(coords: Vec<Rational>) -> Result<Self> {
        let p = RationalPoint(coords);
        if p.in_unit_cube() {
            Ok(p)
        } else {
            Err(Error::OutsideCube(p))
        }
    }

    pub fn from_fractions(coords: &[(i64, i64)]) -> Self {
        RationalPoint(coords.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    pub fn origin(n: usize) -> Self {
        RationalPoint(vec![Rational::zero(); n])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn in_unit_cube(&self) -> bool {
        self.0.iter().all(in_unit_interval)
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }

    pub fn to_homogeneous(&self) -> HomogeneousVector {
        let d = self.denominator();
        let mut entries: Vec<BigInt> = self
            .0
            .iter()
            .map(|q| (q * Rational::from_integer(d.clone())).to_integer())
            .collect();
        entries.push(d);
        HomogeneousVector(entries)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer vector `[a_1, ..., a_n, d]` with `d > 0` and coprime entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomogeneousVector(Vec<BigInt>);

impl HomogeneousVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        let Some(last) = entries.last() else {
            return Err(Error::InvalidHomogeneous("empty vector".into()));
        };
        if !last.is_positive() {
            return Err(Error::InvalidHomogeneous(
                "last entry must be positive".into(),
            ));
        }
        let g = entries.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
        if !g.is_one() {
            return Err(Error::InvalidHomogeneous(format!(
                "entries have common divisor {g}"
            )));
        }
        Ok(HomogeneousVector(entries))
    }

    pub fn from_i64(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&a| BigInt::from(a)).collect())
    }

    /// Divides an integer vector with positive last entry by the gcd of its entries.
    pub fn primitive(entries: Vec<BigInt>) -> Result<Self> {
        let g = entries.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
        if g.is_zero() {
            return Err(Error::InvalidHomogeneous("zero vector".into()));
        }
        Self::new(entries.into_iter().map(|a| a / &g).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> &BigInt {
        self.0.last().expect("validated non-empty")
    }

    /// Affine correspondent `(a_1/d, ..., a_n/d)`.
    pub fn to_point(&self) -> RationalPoint {
        let d = self.last();
        RationalPoint(
            self.0[..self.0.len() - 1]
                .iter()
                .map(|a| Rational::new(a.clone(), d.clone()))
                .collect(),
        )
    }

    /// Affine correspondent, rejected unless it lies in `[0,1]^n`.
    pub fn to_cube_point(&self) -> Result<RationalPoint> {
        let p = self.to_point();
        if p.in_unit_cube() {
            Ok(p)
        } else {
            Err(Error::OutsideCube(p))
        }
    }
}

impl fmt::Display for HomogeneousVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for HomogeneousVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[(i64, i64)]) -> RationalPoint {
        RationalPoint::from_fractions(c)
    }

    #[test]
    fn denominators() {
        assert_eq!(p(&[(0, 1), (0, 1)]).denominator(), BigInt::from(1));
        assert_eq!(p(&[(1, 3), (1, 2)]).denominator(), BigInt::from(6));
        assert_eq!(p(&[(2, 5), (1, 5)]).denominator(), BigInt::from(5));
    }

    #[test]
    fn homogeneous_examples() {
        assert_eq!(
            p(&[(0, 1), (0, 1)]).to_homogeneous(),
            HomogeneousVector::from_i64(&[0, 0, 1]).unwrap()
        );
        assert_eq!(
            p(&[(1, 1), (1, 2)]).to_homogeneous(),
            HomogeneousVector::from_i64(&[2, 1, 2]).unwrap()
        );
        assert_eq!(
            p(&[(2, 5), (1, 5)]).to_homogeneous(),
            HomogeneousVector::from_i64(&[2, 1, 5]).unwrap()
        );
    }

    #[test]
    fn affine_correspondents() {
        let v = |e: &[i64]| HomogeneousVector::from_i64(e).unwrap();
        assert_eq!(v(&[0, 0, 1]).to_point(), p(&[(0, 1), (0, 1)]));
        assert_eq!(v(&[3, 1, 5]).to_point(), p(&[(3, 5), (1, 5)]));
        assert_eq!(v(&[1, 0, 3]).to_point(), p(&[(1, 3), (0, 1)]));
        assert!(v(&[3, 1, 2]).to_cube_point().is_err());
        assert!(v(&[3, 1, 2]).to_point().dim() == 2);
    }

    #[test]
    fn homogeneous_validation() {
        assert!(HomogeneousVector::from_i64(&[2, 4, 6]).is_err());
        assert!(HomogeneousVector::from_i64(&[1, 0, -3]).is_err());
        assert!(HomogeneousVector::from_i64(&[]).is_err());
        assert_eq!(
            HomogeneousVector::primitive(vec![3.into(), 6.into()]).unwrap(),
            HomogeneousVector::from_i64(&[1, 2]).unwrap()
        );
    }

    #[test]
    fn cube_membership_is_separate() {
        let q = p(&[(3, 2), (0, 1)]);
        assert!(!q.in_unit_cube());
        assert!(RationalPoint::in_cube(q.clone().into_coords()).is_err());
        assert_eq!(q.to_homogeneous().to_point(), q);
    }
}
