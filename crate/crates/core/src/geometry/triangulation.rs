use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::polytope::simplex_meet;
use super::simplex::RationalSimplex;
use crate::arith::{Rational, RationalPoint};
use crate::error::{Error, Result};

/// Simplicial complex given by its maximal simplexes; faces are implicit.
///
/// The representation is canonical: vertices are sorted lexicographically,
/// every simplex is a sorted index tuple, simplexes are sorted, and only
/// maximal simplexes over used vertices are kept.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Triangulation {
    ambient_dim: usize,
    vertices: Vec<RationalPoint>,
    simplexes: Vec<Vec<usize>>,
}

type Bbox = (Vec<Rational>, Vec<Rational>);

pub(crate) fn bbox(points: &[RationalPoint]) -> Bbox {
    let n = points[0].dim();
    let lo = (0..n)
        .map(|c| points.iter().map(|p| &p.coords()[c]).min().unwrap().clone())
        .collect();
    let hi = (0..n)
        .map(|c| points.iter().map(|p| &p.coords()[c]).max().unwrap().clone())
        .collect();
    (lo, hi)
}

pub(crate) fn bboxes_meet(a: &Bbox, b: &Bbox) -> bool {
    (0..a.0.len()).all(|c| a.0[c] <= b.1[c] && b.0[c] <= a.1[c])
}

impl Triangulation {
    /// Builds a triangulation from a vertex pool and index tuples. Every tuple
    /// must name affinely independent points.
    pub fn new(
        ambient_dim: usize,
        vertices: Vec<RationalPoint>,
        simplexes: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if let Some(bad) = vertices.iter().find(|v| v.dim() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: bad.dim(),
            });
        }
        let mut point_sets = Vec::with_capacity(simplexes.len());
        for s in &simplexes {
            if let Some(&i) = s.iter().find(|&&i| i >= vertices.len()) {
                return Err(Error::InvalidTriangulation(format!(
                    "vertex index {i} out of range"
                )));
            }
            let pts: Vec<RationalPoint> = s.iter().map(|&i| vertices[i].clone()).collect();
            let simplex = RationalSimplex::new(pts)?;
            point_sets.push(simplex.into_vertices());
        }
        Ok(Self::canonical(ambient_dim, point_sets).0)
    }

    pub fn from_simplexes(
        ambient_dim: usize,
        simplexes: impl IntoIterator<Item = RationalSimplex>,
    ) -> Result<Self> {
        let mut sets = Vec::new();
        for s in simplexes {
            if s.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: s.ambient_dim(),
                });
            }
            sets.push(s.into_vertices());
        }
        Ok(Self::canonical(ambient_dim, sets).0)
    }

    /// Canonical form of a list of point sets (each affinely independent).
    /// The second component maps each kept maximal simplex to the position of
    /// its first occurrence in the input.
    pub(crate) fn canonical(
        ambient_dim: usize,
        sets: Vec<Vec<RationalPoint>>,
    ) -> (Self, Vec<usize>) {
        let pool: BTreeSet<&RationalPoint> = sets.iter().flatten().collect();
        let index: BTreeMap<&RationalPoint, usize> =
            pool.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut tagged: Vec<(Vec<usize>, usize)> = sets
            .iter()
            .enumerate()
            .map(|(k, s)| {
                let mut idx: Vec<usize> = s.iter().map(|p| index[p]).collect();
                idx.sort_unstable();
                idx.dedup();
                (idx, k)
            })
            .collect();
        tagged.sort();
        tagged.dedup_by(|a, b| a.0 == b.0);

        let mut by_vertex: HashMap<usize, Vec<usize>> = HashMap::new();
        for (k, (s, _)) in tagged.iter().enumerate() {
            for &v in s {
                by_vertex.entry(v).or_default().push(k);
            }
        }
        let maximal: Vec<bool> = tagged
            .iter()
            .enumerate()
            .map(|(k, (s, _))| {
                !by_vertex[&s[0]].iter().any(|&o| {
                    o != k && tagged[o].0.len() > s.len() && is_subset(s, &tagged[o].0)
                })
            })
            .collect();
        let kept: Vec<(Vec<usize>, usize)> = tagged
            .into_iter()
            .zip(maximal)
            .filter_map(|(t, keep)| keep.then_some(t))
            .collect();

        // Drop vertices that only appeared in discarded duplicates (none can,
        // but keep the pool tight regardless).
        let used: BTreeSet<usize> = kept.iter().flat_map(|(s, _)| s.iter().copied()).collect();
        let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let pool: Vec<&RationalPoint> = pool.into_iter().collect();
        let vertices = used.iter().map(|&v| pool[v].clone()).collect();
        let mut out: Vec<(Vec<usize>, usize)> = kept
            .into_iter()
            .map(|(s, k)| (s.iter().map(|v| remap[v]).collect(), k))
            .collect();
        out.sort();
        let order = out.iter().map(|(_, k)| *k).collect();
        let simplexes = out.into_iter().map(|(s, _)| s).collect();
        (
            Triangulation {
                ambient_dim,
                vertices,
                simplexes,
            },
            order,
        )
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Triangulation {
            ambient_dim,
            vertices: Vec::new(),
            simplexes: Vec::new(),
        }
    }

    /// The standard (Freudenthal) triangulation of `[0,1]^n` into `n!`
    /// unimodular simplexes `0 <= x_{p(1)} <= ... <= x_{p(n)} <= 1`.
    pub fn cube(n: usize) -> Self {
        let mut sets = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p| {
            let mut cur = vec![Rational::zero(); n];
            let mut pts = vec![RationalPoint::new(cur.clone())];
            for &axis in p {
                cur[axis] = Rational::one();
                pts.push(RationalPoint::new(cur.clone()));
            }
            sets.push(pts);
        });
        Self::canonical(n, sets).0
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn maximal_simplexes(&self) -> &[Vec<usize>] {
        &self.simplexes
    }

    pub fn len(&self) -> usize {
        self.simplexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplexes.is_empty()
    }

    pub fn simplex_points(&self, i: usize) -> Vec<RationalPoint> {
        self.simplexes[i]
            .iter()
            .map(|&v| self.vertices[v].clone())
            .collect()
    }

    pub fn simplex(&self, i: usize) -> RationalSimplex {
        RationalSimplex::from_sorted_unchecked(self.simplex_points(i))
    }

    pub fn simplexes(&self) -> Vec<RationalSimplex> {
        (0..self.len()).map(|i| self.simplex(i)).collect()
    }

    pub fn simplex_dim(&self, i: usize) -> usize {
        self.simplexes[i].len() - 1
    }

    /// Largest simplex dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplexes.iter().map(|s| s.len() - 1).max()
    }

    /// Every face of every maximal simplex, each listed once.
    pub fn faces(&self) -> Vec<RationalSimplex> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in &self.simplexes {
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                seen.insert((0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect());
            }
        }
        seen.into_iter()
            .map(|f| {
                RationalSimplex::from_sorted_unchecked(
                    f.iter().map(|&v| self.vertices[v].clone()).collect(),
                )
            })
            .collect()
    }

    pub fn is_regular(&self) -> bool {
        (0..self.len()).all(|i| self.simplex(i).is_regular())
    }

    /// Total n-dimensional measure of the support.
    pub fn measure(&self) -> Rational {
        (0..self.len())
            .map(|i| self.simplex(i).lebesgue_measure_ndim())
            .sum()
    }

    /// First maximal simplex containing `p`.
    pub fn locate(&self, p: &RationalPoint) -> Option<usize> {
        (0..self.len()).find(|&i| self.simplex(i).contains(p))
    }

    pub fn contains_point(&self, p: &RationalPoint) -> bool {
        self.locate(p).is_some()
    }

    pub fn is_closed_domain(&self) -> bool {
        self.simplexes.iter().all(|s| s.len() == self.ambient_dim + 1)
    }

    /// Any two maximal simplexes meet in a common face.
    pub fn is_proper(&self) -> bool {
        let boxes: Vec<Bbox> = (0..self.len()).map(|i| bbox(&self.simplex_points(i))).collect();
        for i in 0..self.len() {
            let si = self.simplex_points(i);
            for j in i + 1..self.len() {
                if !bboxes_meet(&boxes[i], &boxes[j]) {
                    continue;
                }
                let sj = self.simplex_points(j);
                let meet = simplex_meet(&si, &sj);
                if !meet.iter().all(|p| si.contains(p) && sj.contains(p)) {
                    return false;
                }
            }
        }
        true
    }

    /// Connected components of the facet-adjacency graph on the simplexes of
    /// full ambient dimension, each listed by increasing simplex index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.ambient_dim;
        let full: Vec<usize> = (0..self.len()).filter(|&i| self.simplexes[i].len() == n + 1).collect();
        let mut by_facet: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for &i in &full {
            let s = &self.simplexes[i];
            for skip in 0..s.len() {
                let facet: Vec<usize> = s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                by_facet.entry(facet).or_default().push(i);
            }
        }
        let mut comp: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        // Greedy growth: start from the first unassigned simplex and keep
        // adding simplexes that share a facet with the current component.
        for &start in &full {
            if comp.contains_key(&start) {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp.insert(start, id);
            let mut k = 0;
            while k < members.len() {
                let s = self.simplexes[members[k]].clone();
                for skip in 0..s.len() {
                    let facet: Vec<usize> = s.iter().enumerate().filter(|&(q, _)| q != skip).map(|(_, &v)| v).collect();
                    for &o in &by_facet[&facet] {
                        if let std::collections::hash_map::Entry::Vacant(e) = comp.entry(o) {
                            e.insert(id);
                            members.push(o);
                        }
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // Both sorted.
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
    }
    true
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Regular, and every maximal simplex has coprime vertex denominators.
pub fn is_strongly_regular_triangulation(t: &Triangulation) -> Result<bool> {
    if !t.is_regular() {
        return Err(Error::NotRegular);
    }
    Ok((0..t.len()).all(|i| t.simplex(i).denominator_gcd() == BigInt::one()))
}

/// Every maximal simplex has full ambient dimension.
pub fn is_closed_domain(t: &Triangulation) -> bool {
    t.is_closed_domain()
}

/// The facet-adjacency graph on the n-simplexes is connected.
pub fn interior_connected(t: &Triangulation) -> Result<bool> {
    if !t.is_closed_domain() {
        return Err(Error::NotClosedDomain);
    }
    Ok(t.components().len() <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

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
    fn canonical_form_drops_faces_and_sorts() {
        let t = tri(1, &[&[&[(1, 1)], &[(1, 2)]], &[&[(1, 2)]], &[&[(0, 1)], &[(1, 2)]]]);
        assert_eq!(t.vertices(), &[pt(&[(0, 1)]), pt(&[(1, 2)]), pt(&[(1, 1)])]);
        assert_eq!(t.maximal_simplexes(), &[vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn cube_triangulation() {
        let t = Triangulation::cube(3);
        assert_eq!(t.len(), 6);
        assert_eq!(t.vertices().len(), 8);
        assert_eq!(t.measure(), rat(1, 1));
        assert!(t.is_regular());
        assert!(t.is_proper());
        assert_eq!(interior_connected(&t), Ok(true));
    }

    #[test]
    fn strong_regularity() {
        assert_eq!(is_strongly_regular_triangulation(&Triangulation::cube(1)), Ok(true));
        let half = tri(1, &[&[&[(1, 2)]]]);
        assert_eq!(is_strongly_regular_triangulation(&half), Ok(false));
        assert_eq!(is_strongly_regular_triangulation(&Triangulation::cube(2)), Ok(true));
        let bad = tri(1, &[&[&[(1, 3)], &[(2, 3)]]]);
        assert_eq!(is_strongly_regular_triangulation(&bad), Err(Error::NotRegular));
    }

    #[test]
    fn closed_domains() {
        assert!(tri(1, &[&[&[(0, 1)], &[(1, 2)]]]).is_closed_domain());
        let l = tri(2, &[&[&[(0, 1), (1, 1)], &[(0, 1), (0, 1)]], &[&[(1, 1), (0, 1)], &[(0, 1), (0, 1)]]]);
        assert!(!is_closed_domain(&l));
        assert_eq!(interior_connected(&l), Err(Error::NotClosedDomain));
    }

    #[test]
    fn vertex_contact_is_not_interior_connected() {
        let t = tri(
            2,
            &[
                &[&[(0, 1), (0, 1)], &[(1, 2), (0, 1)], &[(1, 2), (1, 2)]],
                &[&[(1, 2), (1, 2)], &[(1, 1), (1, 2)], &[(1, 1), (1, 1)]],
            ],
        );
        assert_eq!(interior_connected(&t), Ok(false));
        assert_eq!(t.components().len(), 2);
        let single = tri(2, &[&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)], &[(1, 1), (1, 1)]]]);
        assert_eq!(interior_connected(&single), Ok(true));
    }

    #[test]
    fn overlapping_simplexes_are_not_proper() {
        let t = tri(1, &[&[&[(0, 1)], &[(2, 3)]], &[&[(1, 3)], &[(1, 1)]]]);
        assert!(!t.is_proper());
        let crossing = tri(
            2,
            &[
                &[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)], &[(1, 1), (1, 1)]],
                &[&[(0, 1), (0, 1)], &[(1, 1), (1, 2)], &[(0, 1), (1, 1)]],
            ],
        );
        assert!(!crossing.is_proper());
        assert!(Triangulation::cube(2).is_proper());
    }
}
