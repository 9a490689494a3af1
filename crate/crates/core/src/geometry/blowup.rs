use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::simplex::RationalSimplex;
use super::triangulation::Triangulation;
use crate::arith::{lattice, HomogeneousVector, RationalPoint};
use crate::error::{Error, Result};

pub const DEFAULT_BLOW_UP_CAP: usize = 100_000;

/// Stellar subdivision at `b`: every maximal simplex `S` containing `b` is
/// replaced by the simplexes `conv(b, S \ {v})` for the vertices `v` carrying
/// positive barycentric weight of `b`.
pub fn blow_up(t: &Triangulation, b: &RationalPoint) -> Result<Triangulation> {
    if b.dim() != t.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: t.ambient_dim(),
            found: b.dim(),
        });
    }
    let mut hit = false;
    let mut sets = Vec::with_capacity(t.len() + 4);
    for i in 0..t.len() {
        let s = t.simplex(i);
        let pts = s.vertices();
        match s.barycentric(b) {
            Some(l) if l.iter().all(|x| !x.is_negative()) => {
                hit = true;
                let carrier: Vec<usize> = (0..l.len()).filter(|&k| l[k].is_positive()).collect();
                if carrier.len() == 1 {
                    sets.push(pts.to_vec());
                    continue;
                }
                for &v in &carrier {
                    let mut new: Vec<RationalPoint> = pts
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != v)
                        .map(|(_, p)| p.clone())
                        .collect();
                    new.push(b.clone());
                    new.sort();
                    sets.push(new);
                }
            }
            _ => sets.push(pts.to_vec()),
        }
    }
    if !hit {
        return Err(Error::PointOutsideSupport(b.clone()));
    }
    Ok(Triangulation::canonical(t.ambient_dim(), sets).0)
}

/// Regular refinement of `t` with the same support, with the default cap.
pub fn desingularize(t: &Triangulation) -> Result<Triangulation> {
    desingularize_with_cap(t, DEFAULT_BLOW_UP_CAP)
}

/// Repeatedly takes a non-regular face of least dimension and blows up at the
/// lattice point of its fundamental parallelepiped with least last
/// homogeneous coordinate. Each such blow-up replaces the face by simplexes
/// of strictly smaller multiplicity. Fails after `cap` blow-ups.
pub fn desingularize_with_cap(t: &Triangulation, cap: usize) -> Result<Triangulation> {
    let mut cur = t.clone();
    let mut regular: HashMap<RationalSimplex, bool> = HashMap::new();
    let mut steps = 0;
    loop {
        let mut worst: Option<RationalSimplex> = None;
        for face in cur.faces() {
            if face.dim() == 0 || worst.as_ref().is_some_and(|w| w.dim() <= face.dim()) {
                continue;
            }
            let ok = *regular.entry(face.clone()).or_insert_with(|| face.is_regular());
            if !ok {
                worst = Some(face);
            }
        }
        let Some(face) = worst else {
            return Ok(cur);
        };
        if steps == cap {
            return Err(Error::BlowUpCap(cap));
        }
        let rows: Vec<Vec<BigInt>> = face
            .homogeneous()
            .iter()
            .map(|h| h.entries().to_vec())
            .collect();
        let (w, _) = lattice::parallelepiped_point(&rows)
            .expect("non-regular independent rows have a parallelepiped point");
        debug_assert!(!w.last().is_some_and(Zero::is_zero));
        let b = HomogeneousVector::new(w)?.to_point();
        cur = blow_up(&cur, &b)?;
        steps += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::polyhedra_equal;

    fn pt(c: &[(i64, i64)]) -> RationalPoint {
        RationalPoint::from_fractions(c)
    }

    fn tri(n: usize, sets: &[&[&[(i64, i64)]]]) -> Triangulation {
        Triangulation::from_simplexes(
            n,
            sets.iter()
                .map(|s| RationalSimplex::new(s.iter().map(|c| pt(c)).collect()).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn first_fibonacci_blow_up() {
        let u1 = tri(2, &[&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)], &[(1, 1), (1, 1)]]]);
        let out = blow_up(&u1, &pt(&[(1, 1), (1, 2)])).unwrap();
        let expected = tri(
            2,
            &[
                &[&[(0, 1), (0, 1)], &[(1, 1), (1, 2)], &[(1, 1), (1, 1)]],
                &[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)], &[(1, 1), (1, 2)]],
            ],
        );
        assert_eq!(out, expected);
    }

    #[test]
    fn interval_bisection_and_vertex_blow_up() {
        let t = Triangulation::cube(1);
        let out = blow_up(&t, &pt(&[(1, 2)])).unwrap();
        assert_eq!(out, tri(1, &[&[&[(0, 1)], &[(1, 2)]], &[&[(1, 2)], &[(1, 1)]]]));
        assert_eq!(blow_up(&out, &pt(&[(1, 2)])).unwrap(), out);
        assert_eq!(
            blow_up(&t, &pt(&[(3, 2)])),
            Err(Error::PointOutsideSupport(pt(&[(3, 2)])))
        );
    }

    #[test]
    fn desingularize_segment() {
        let t = tri(1, &[&[&[(1, 3)], &[(2, 3)]]]);
        let out = desingularize(&t).unwrap();
        assert!(out.is_regular());
        assert!(polyhedra_equal(&t, &out));
        assert!(out.vertices().contains(&pt(&[(1, 2)])));
        assert_eq!(desingularize(&Triangulation::cube(2)).unwrap(), Triangulation::cube(2));
    }

    #[test]
    fn desingularize_triangle_with_determinant_two() {
        let t = tri(2, &[&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)], &[(1, 1), (2, 1)]]]);
        let out = desingularize(&t).unwrap();
        assert!(out.is_regular());
        assert!(polyhedra_equal(&t, &out));
    }

    #[test]
    fn cap_is_enforced() {
        let t = tri(1, &[&[&[(1, 7)], &[(6, 7)]]]);
        assert_eq!(desingularize_with_cap(&t, 0), Err(Error::BlowUpCap(0)));
    }
}
