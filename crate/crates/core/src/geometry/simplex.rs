use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::linalg::{affine_dim, determinant};
use crate::arith::{lattice, HomogeneousVector, Rational, RationalPoint};
use crate::error::{Error, Result};

/// Rational simplex, stored with its vertices in lexicographic order so that
/// equality is equality of vertex sets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalSimplex {
    vertices: Vec<RationalPoint>,
}

impl RationalSimplex {
    pub fn new(mut vertices: Vec<RationalPoint>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::ShapeMismatch("simplex without vertices".into()));
        };
        let n = first.dim();
        if let Some(bad) = vertices.iter().find(|v| v.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        vertices.sort();
        let pts: Vec<&[Rational]> = vertices.iter().map(|v| v.coords()).collect();
        if affine_dim(&pts) != Some(vertices.len() - 1) {
            return Err(Error::AffinelyDependent);
        }
        Ok(RationalSimplex { vertices })
    }

    pub fn from_homogeneous(vs: &[HomogeneousVector]) -> Result<Self> {
        Self::new(vs.iter().map(HomogeneousVector::to_point).collect())
    }

    /// Caller guarantees sorted, affinely independent vertices.
    pub(crate) fn from_sorted_unchecked(vertices: Vec<RationalPoint>) -> Self {
        RationalSimplex { vertices }
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<RationalPoint> {
        self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn homogeneous(&self) -> Vec<HomogeneousVector> {
        self.vertices.iter().map(RationalPoint::to_homogeneous).collect()
    }

    fn homogeneous_rows(&self) -> Vec<Vec<BigInt>> {
        self.homogeneous()
            .iter()
            .map(|h| h.entries().to_vec())
            .collect()
    }

    /// The homogeneous vertex vectors extend to a basis of `Z^{n+1}`.
    pub fn is_regular(&self) -> bool {
        lattice::rows_extend_to_basis(&self.homogeneous_rows())
    }

    /// Index of the lattice spanned by the homogeneous vertex vectors in its
    /// saturation; 1 exactly for regular simplexes.
    pub fn multiplicity(&self) -> BigInt {
        lattice::lattice_index(&self.homogeneous_rows())
    }

    pub fn denominator_gcd(&self) -> BigInt {
        self.vertices
            .iter()
            .fold(BigInt::zero(), |g, v| g.gcd(&v.denominator()))
    }

    /// Affine correspondent of the sum of the homogeneous vertex vectors.
    pub fn farey_mediant(&self) -> Result<RationalPoint> {
        if self.dim() == 0 {
            return Err(Error::ZeroDimensional);
        }
        if !self.is_regular() {
            return Err(Error::NotRegular);
        }
        let rows = self.homogeneous_rows();
        let sum: Vec<BigInt> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| &r[c]).sum())
            .collect();
        // The sum of part of a basis is primitive.
        Ok(HomogeneousVector::new(sum)?.to_point())
    }

    /// n-dimensional Lebesgue measure; zero below full dimension.
    pub fn lebesgue_measure_ndim(&self) -> Rational {
        let n = self.ambient_dim();
        if self.dim() < n {
            return Rational::zero();
        }
        let v0 = self.vertices[0].coords();
        let rows: Vec<Vec<Rational>> = self.vertices[1..]
            .iter()
            .map(|v| v.coords().iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        let fact: BigInt = (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
        determinant(&rows).abs() / Rational::from_integer(fact)
    }

    /// Barycentric coordinates of `p`, `None` when `p` is off the affine hull.
    pub fn barycentric(&self, p: &RationalPoint) -> Option<Vec<Rational>> {
        if p.dim() != self.ambient_dim() {
            return None;
        }
        super::polytope::barycentric(&self.vertices, p)
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.barycentric(p)
            .is_some_and(|l| l.iter().all(|x| !x.is_negative()))
    }

    pub fn barycenter(&self) -> RationalPoint {
        let k = Rational::from_integer(BigInt::from(self.vertices.len()));
        let coords = (0..self.ambient_dim())
            .map(|c| {
                self.vertices
                    .iter()
                    .map(|v| &v.coords()[c])
                    .sum::<Rational>()
                    / &k
            })
            .collect();
        RationalPoint::new(coords)
    }

    /// Faces of every dimension, including the simplex itself.
    pub fn faces(&self) -> Vec<RationalSimplex> {
        let k = self.vertices.len();
        (1u64..(1u64 << k))
            .map(|mask| {
                RationalSimplex::from_sorted_unchecked(
                    (0..k)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| self.vertices[i].clone())
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for RationalSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv(")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", v.to_homogeneous())?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RationalSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
