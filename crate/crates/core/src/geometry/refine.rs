//! Subdivision primitives: splitting simplexes by affine functionals, pulling
//! back a triangulation along piecewise-affine data, and the support
//! containment tests built on top of them.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::polytope::{barycentric_forms, eval_form, triangulate, Form, Frame};
use super::triangulation::{bbox, bboxes_meet, Triangulation};
use crate::arith::{Rational, RationalPoint};
use crate::error::{Error, Result};

/// Side of a splitting functional a piece lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    Below,
    Above,
    Whole,
}

/// Splits every simplex whose functional strictly changes sign on its
/// vertices into the pulling triangulations of the two halves. Each output
/// piece carries the index of its parent.
pub(crate) fn split_simplexes(
    simplexes: &[Vec<RationalPoint>],
    functionals: &[Option<Form>],
) -> Vec<(usize, Side, Vec<RationalPoint>)> {
    let pieces: Vec<Vec<(usize, Side, Vec<RationalPoint>)>> = simplexes
        .par_iter()
        .zip(functionals)
        .enumerate()
        .map(|(k, (s, h))| {
            let Some(h) = h else {
                return vec![(k, Side::Whole, s.clone())];
            };
            let values: Vec<Rational> = s.iter().map(|v| eval_form(h, v.coords())).collect();
            let below = values.iter().any(Signed::is_negative);
            let above = values.iter().any(Signed::is_positive);
            if !(below && above) {
                return vec![(k, Side::Whole, s.clone())];
            }
            let frame = Frame::new(s);
            let hf = frame.pull_back(h);
            let mut out = Vec::new();
            for (side, form) in [
                (Side::Below, hf.iter().map(|x| -x).collect::<Form>()),
                (Side::Above, hf.clone()),
            ] {
                let mut ineqs = frame.simplex_bounds();
                ineqs.push(form);
                if let Some((dim, cells)) = triangulate(&frame, &[], &ineqs) {
                    if dim == frame.dim() {
                        out.extend(cells.into_iter().map(|(pts, _)| (k, side, pts)));
                    }
                }
            }
            out
        })
        .collect();
    pieces.into_iter().flatten().collect()
}

/// Refines `t` so that every simplex lies in `{h <= 0}` or `{h >= 0}`; `h`
/// holds the `n` coefficients followed by the constant.
pub fn refine_along_hyperplane(t: &Triangulation, h: &[Rational]) -> Result<Triangulation> {
    if h.len() != t.ambient_dim() + 1 {
        return Err(Error::DimensionMismatch {
            expected: t.ambient_dim() + 1,
            found: h.len(),
        });
    }
    let simplexes: Vec<Vec<RationalPoint>> = (0..t.len()).map(|i| t.simplex_points(i)).collect();
    let hs = vec![Some(h.to_vec()); simplexes.len()];
    let pieces = split_simplexes(&simplexes, &hs);
    Ok(Triangulation::canonical(t.ambient_dim(), pieces.into_iter().map(|p| p.2).collect()).0)
}

/// A cell of the pullback: part of source simplex `parent` mapped into the
/// target simplex `target`.
#[derive(Clone, Debug)]
pub(crate) struct PulledCell {
    pub parent: usize,
    pub target: usize,
    pub points: Vec<RationalPoint>,
}

/// For every source simplex `G` (vertex list plus the images of its vertices
/// under an affine map `g`), triangulates the cells `G ∩ g^{-1}(F)` over the
/// maximal simplexes `F` of `target`, keeping cells of full dimension in `G`.
/// The flag reports whether those cells cover all of `G`, which is exactly
/// `g(G) ⊆ |target|` when `target` is proper.
pub(crate) fn pullback(
    sources: &[(Vec<RationalPoint>, Vec<RationalPoint>)],
    target: &Triangulation,
) -> (Vec<PulledCell>, Vec<bool>) {
    let targets: Vec<Vec<RationalPoint>> = (0..target.len()).map(|i| target.simplex_points(i)).collect();
    let boxes: Vec<_> = targets.iter().map(|t| bbox(t)).collect();
    let per_source: Vec<(Vec<PulledCell>, bool)> = sources
        .par_iter()
        .enumerate()
        .map(|(k, (verts, images))| {
            let frame = Frame::new(verts);
            let m = frame.dim();
            let img_forms = frame.interpolate(images);
            let img_box = bbox(images);
            let mut seen: BTreeSet<Vec<RationalPoint>> = BTreeSet::new();
            let mut cells = Vec::new();
            let mut volume = Rational::zero();
            for (f, fverts) in targets.iter().enumerate() {
                if !bboxes_meet(&img_box, &boxes[f]) {
                    continue;
                }
                let Some((beta, residual)) = barycentric_forms(fverts, &img_forms) else {
                    continue;
                };
                if !residual.is_empty() {
                    // The image leaves aff(F) somewhere: the cell is at most a
                    // hyperplane section of G.
                    continue;
                }
                let mut ineqs = frame.simplex_bounds();
                ineqs.extend(beta);
                let Some((dim, pieces)) = triangulate(&frame, &[], &ineqs) else {
                    continue;
                };
                if dim != m {
                    continue;
                }
                let key: BTreeSet<RationalPoint> = pieces.iter().flat_map(|p| p.0.iter().cloned()).collect();
                if !seen.insert(key.into_iter().collect()) {
                    continue;
                }
                for (points, vol) in pieces {
                    volume += vol;
                    cells.push(PulledCell {
                        parent: k,
                        target: f,
                        points,
                    });
                }
            }
            (cells, volume.is_one())
        })
        .collect();
    let mut cells = Vec::new();
    let mut covered = Vec::new();
    for (c, ok) in per_source {
        cells.extend(c);
        covered.push(ok);
    }
    (cells, covered)
}

fn identity_sources(p: &Triangulation) -> Vec<(Vec<RationalPoint>, Vec<RationalPoint>)> {
    (0..p.len())
        .map(|i| {
            let s = p.simplex_points(i);
            (s.clone(), s)
        })
        .collect()
}

/// `|p| ⊆ |q|`, assuming `q` is a proper complex.
pub fn is_subset(p: &Triangulation, q: &Triangulation) -> bool {
    if p.ambient_dim() != q.ambient_dim() {
        return false;
    }
    pullback(&identity_sources(p), q).1.into_iter().all(|c| c)
}

/// Pieces of `p` refined along the simplexes of `q` (only the parts of `p`
/// inside `|q|`), each tagged with its parent in `p` and host in `q`.
pub(crate) fn intersect_cells(p: &Triangulation, q: &Triangulation) -> (Vec<PulledCell>, Vec<bool>) {
    pullback(&identity_sources(p), q)
}

/// `|p| = |q|` as point sets.
pub fn polyhedra_equal(p: &Triangulation, q: &Triangulation) -> bool {
    is_subset(p, q) && is_subset(q, p)
}
