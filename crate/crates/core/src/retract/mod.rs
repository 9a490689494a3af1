//! Decision procedures on Z-retractions of the cube: idempotence and range,
//! Z-homeomorphism domains, multiplicity, index bounds and the comparison of
//! ranges and generated algebras.

mod algebra;
mod homeo;
mod index;
mod multiplicity;

use crate::error::{Error, Result};
use crate::geometry::{polyhedra_equal, Triangulation};
use crate::lang::MvTerm;
use crate::mcnaughton::{compile, compose, fixed_point_set, pwl_difference, PwlMap};

pub use algebra::{same_algebra, same_range};
pub use homeo::{certify_homeo_domain, homeo_subcomplex, z_homeomorphism_onto, HomeoSubcomplex};
pub use index::{index_bounds, IndexBounds, UpperBound};
pub use multiplicity::{multiplicity, MultiplicityReport};

/// An idempotent Z-map of `I^n` into itself, with its range cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZRetraction {
    map: PwlMap,
    range: Triangulation,
}

impl ZRetraction {
    /// Checks that `map` is an endomap of the whole cube with `map ∘ map =
    /// map`, and computes the range as its fixed-point set.
    pub fn from_map(map: PwlMap) -> Result<Self> {
        let n = map.ambient_dim();
        if map.codomain_dim() != n {
            return Err(Error::ShapeMismatch(format!(
                "a retraction of I^{n} needs {n} components, found {}",
                map.codomain_dim()
            )));
        }
        if !polyhedra_equal(map.domain(), &Triangulation::cube(n)) {
            return Err(Error::ShapeMismatch("domain is not the unit cube".into()));
        }
        if let Some(witness) = pwl_difference(&compose(&map, &map)?, &map)? {
            return Err(Error::NotIdempotent { witness });
        }
        let range = fixed_point_set(&map)?;
        Ok(ZRetraction { map, range })
    }

    pub fn map(&self) -> &PwlMap {
        &self.map
    }

    pub fn range(&self) -> &Triangulation {
        &self.range
    }

    pub fn ambient_dim(&self) -> usize {
        self.map.ambient_dim()
    }
}

/// Compiles `n` terms in `n` variables and checks idempotence.
pub fn verify_z_retraction(ts: &[MvTerm]) -> Result<ZRetraction> {
    ZRetraction::from_map(compile(ts, ts.len())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RationalPoint;
    use crate::geometry::RationalSimplex;
    use crate::lang::parse;

    fn terms(src: &[&str]) -> Vec<MvTerm> {
        src.iter().map(|s| parse(s).unwrap()).collect()
    }

    #[test]
    fn verification_examples() {
        let s = verify_z_retraction(&terms(&["x1 /\\ ~x1"])).unwrap();
        let half = Triangulation::from_simplexes(
            1,
            [RationalSimplex::new(vec![
                RationalPoint::from_fractions(&[(0, 1)]),
                RationalPoint::from_fractions(&[(1, 2)]),
            ])
            .unwrap()],
        )
        .unwrap();
        assert_eq!(s.range(), &half);
        assert_eq!(
            verify_z_retraction(&terms(&["x1 (+) x1"])),
            Err(Error::NotIdempotent {
                witness: RationalPoint::from_fractions(&[(1, 4)])
            })
        );
        let id = verify_z_retraction(&terms(&["x1", "x2"])).unwrap();
        assert_eq!(id.range(), &Triangulation::cube(2));
    }
}
