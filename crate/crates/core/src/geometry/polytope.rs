//! Small H-polytopes living in the affine hull of a simplex, vertex
//! enumeration by brute force, and the pulling triangulation used by every
//! refinement step.
//!
//! A [`Frame`] parametrises `aff(S)` as `v_0 + sum mu_i (v_i - v_0)`. Affine
//! forms are coefficient vectors with the constant term last.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::arith::linalg::{affine_dim, determinant, rank, solve_parametric, solve_unique};
use crate::arith::{Rational, RationalPoint};

pub(crate) type Form = Vec<Rational>;

pub(crate) fn eval_form(f: &[Rational], x: &[Rational]) -> Rational {
    let (coeffs, c) = f.split_at(f.len() - 1);
    coeffs.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>() + &c[0]
}

fn is_constant(f: &[Rational]) -> bool {
    f[..f.len() - 1].iter().all(Zero::is_zero)
}

pub(crate) fn constant_form(len: usize, c: Rational) -> Form {
    let mut f = vec![Rational::zero(); len];
    f[len - 1] = c;
    f
}

pub(crate) fn sub_forms(a: &[Rational], b: &[Rational]) -> Form {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[derive(Clone, Debug)]
pub(crate) struct Frame {
    origin: Vec<Rational>,
    dirs: Vec<Vec<Rational>>,
}

impl Frame {
    pub fn new(vertices: &[RationalPoint]) -> Frame {
        let origin = vertices[0].coords().to_vec();
        let dirs = vertices[1..]
            .iter()
            .map(|v| v.coords().iter().zip(&origin).map(|(a, b)| a - b).collect())
            .collect();
        Frame { origin, dirs }
    }

    pub fn dim(&self) -> usize {
        self.dirs.len()
    }

    pub fn point(&self, mu: &[Rational]) -> RationalPoint {
        let coords = (0..self.origin.len())
            .map(|c| {
                self.dirs
                    .iter()
                    .zip(mu)
                    .fold(self.origin[c].clone(), |acc, (d, m)| acc + &d[c] * m)
            })
            .collect();
        RationalPoint::new(coords)
    }

    /// Pulls an ambient affine form back to a form in `mu`.
    pub fn pull_back(&self, ambient: &[Rational]) -> Form {
        let n = self.origin.len();
        let mut f: Form = self
            .dirs
            .iter()
            .map(|d| d.iter().zip(&ambient[..n]).map(|(a, b)| a * b).sum())
            .collect();
        f.push(eval_form(ambient, &self.origin));
        f
    }

    /// `mu_i >= 0` and `1 - sum mu_i >= 0`.
    pub fn simplex_bounds(&self) -> Vec<Form> {
        let m = self.dim();
        let mut out: Vec<Form> = (0..m)
            .map(|i| {
                let mut f = vec![Rational::zero(); m + 1];
                f[i] = Rational::from_integer(1.into());
                f
            })
            .collect();
        let mut last = vec![Rational::from_integer((-1).into()); m + 1];
        last[m] = Rational::from_integer(1.into());
        out.push(last);
        out
    }

    /// Forms in `mu` of the affine image whose vertex values are `images`.
    pub fn interpolate(&self, images: &[RationalPoint]) -> Vec<Form> {
        let k = images[0].dim();
        (0..k)
            .map(|c| {
                let base = &images[0].coords()[c];
                let mut f: Form = images[1..]
                    .iter()
                    .map(|w| &w.coords()[c] - base)
                    .collect();
                f.push(base.clone());
                f
            })
            .collect()
    }
}

/// Barycentric coordinates with respect to `vertices` of the point given by
/// `point_forms`, as forms, together with the residual equalities that
/// express membership in the affine hull. `None` for dependent vertices.
pub(crate) fn barycentric_forms(
    vertices: &[RationalPoint],
    point_forms: &[Form],
) -> Option<(Vec<Form>, Vec<Form>)> {
    let n = vertices[0].dim();
    let len = point_forms.first().map_or(1, Vec::len);
    let mut w: Vec<Vec<Rational>> = (0..n)
        .map(|c| vertices.iter().map(|v| v.coords()[c].clone()).collect())
        .collect();
    w.push(vec![Rational::from_integer(1.into()); vertices.len()]);
    let mut rhs = point_forms.to_vec();
    rhs.push(constant_form(len, Rational::from_integer(1.into())));
    solve_parametric(&w, &rhs)
}

/// A bounded polytope `{mu : eqs = 0, ineqs >= 0}` given by its vertices and
/// the incidence of vertices with inequalities.
#[derive(Clone, Debug)]
pub(crate) struct Cell {
    pub mu: Vec<Vec<Rational>>,
    pub tight: Vec<Vec<bool>>,
    pub dim: usize,
}

fn subsets(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

/// Vertex enumeration. The feasible region must be bounded, which holds for
/// every caller since the frame's simplex bounds are always included.
pub(crate) fn cell(m: usize, eqs: &[Form], ineqs: &[Form]) -> Option<Cell> {
    let mut eq_rows: Vec<Form> = Vec::new();
    for e in eqs {
        if is_constant(e) {
            if !e[m].is_zero() {
                return None;
            }
        } else {
            eq_rows.push(e.clone());
        }
    }
    let eq_coeffs: Vec<Vec<Rational>> = eq_rows.iter().map(|e| e[..m].to_vec()).collect();
    let r = rank(&eq_coeffs);
    if r > m {
        return None;
    }
    let k = m - r;
    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    subsets(ineqs.len(), k, &mut |chosen| {
        let rows: Vec<&Form> = eq_rows.iter().chain(chosen.iter().map(|&i| &ineqs[i])).collect();
        let a: Vec<Vec<Rational>> = rows.iter().map(|f| f[..m].to_vec()).collect();
        let b: Vec<Rational> = rows.iter().map(|f| -f[m].clone()).collect();
        let sol = if a.is_empty() {
            Some(Vec::new())
        } else {
            solve_unique(&a, &b)
        };
        if let Some(x) = sol {
            if ineqs.iter().all(|f| !eval_form(f, &x).is_negative()) {
                found.insert(x);
            }
        }
    });
    if found.is_empty() {
        return None;
    }
    let mu: Vec<Vec<Rational>> = found.into_iter().collect();
    let dim = affine_dim(&mu).unwrap_or(0);
    let tight = mu
        .iter()
        .map(|x| ineqs.iter().map(|f| eval_form(f, x).is_zero()).collect())
        .collect();
    Some(Cell { mu, tight, dim })
}

/// Pulling triangulation of a cell: cone from the least vertex (under the
/// supplied ordering keys) over the triangulated facets avoiding it. Using the
/// same global order on every cell makes shared faces agree.
pub(crate) fn pulling(keys: &[RationalPoint], cell: &Cell) -> Vec<Vec<usize>> {
    let mut all: Vec<usize> = (0..cell.mu.len()).collect();
    all.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let n_ineq = cell.tight.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    pull(cell, n_ineq, &all, cell.dim, &mut Vec::new(), &mut out);
    out
}

fn pull(
    cell: &Cell,
    n_ineq: usize,
    set: &[usize],
    d: usize,
    apex: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if set.len() == d + 1 {
        let mut s: Vec<usize> = apex.iter().chain(set).copied().collect();
        s.sort_unstable();
        out.push(s);
        return;
    }
    let v = set[0];
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..n_ineq {
        let face: Vec<usize> = set.iter().copied().filter(|&u| cell.tight[u][i]).collect();
        if face.len() < d || face.contains(&v) {
            continue;
        }
        let pts: Vec<&Vec<Rational>> = face.iter().map(|&u| &cell.mu[u]).collect();
        if affine_dim(&pts) == Some(d - 1) {
            facets.insert(face);
        }
    }
    apex.push(v);
    for f in facets {
        pull(cell, n_ineq, &f, d - 1, apex, out);
    }
    apex.pop();
}

/// `|det|` of a simplex given by `m + 1` points of `R^m`.
pub(crate) fn abs_det(points: &[&Vec<Rational>]) -> Rational {
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect())
        .collect();
    determinant(&rows).abs()
}

/// Triangulates `{mu : eqs = 0, ineqs >= 0}` inside `frame`, returning the
/// cell's dimension and its simplexes as ambient points with their absolute
/// determinants in `mu`-space (frame simplex has determinant 1).
pub(crate) fn triangulate(
    frame: &Frame,
    eqs: &[Form],
    ineqs: &[Form],
) -> Option<(usize, Vec<(Vec<RationalPoint>, Rational)>)> {
    let cell = cell(frame.dim(), eqs, ineqs)?;
    let keys: Vec<RationalPoint> = cell.mu.iter().map(|x| frame.point(x)).collect();
    let full = cell.dim == frame.dim();
    let simplexes = pulling(&keys, &cell)
        .into_iter()
        .map(|s| {
            let vol = if full {
                let pts: Vec<&Vec<Rational>> = s.iter().map(|&i| &cell.mu[i]).collect();
                abs_det(&pts)
            } else {
                Rational::zero()
            };
            let mut pts: Vec<RationalPoint> = s.iter().map(|&i| keys[i].clone()).collect();
            pts.sort();
            (pts, vol)
        })
        .collect();
    Some((cell.dim, simplexes))
}

/// Barycentric coordinates of `p` with respect to `vertices` taken in the
/// given order; `None` off the affine hull.
pub(crate) fn barycentric(vertices: &[RationalPoint], p: &RationalPoint) -> Option<Vec<Rational>> {
    let forms: Vec<Form> = p.coords().iter().map(|c| vec![c.clone()]).collect();
    let (beta, residual) = barycentric_forms(vertices, &forms)?;
    if !residual.is_empty() {
        return None;
    }
    Some(beta.into_iter().map(|mut f| f.pop().unwrap()).collect())
}

/// Vertices of `conv(a) ∩ conv(b)` for two affinely independent point sets.
pub(crate) fn simplex_meet(a: &[RationalPoint], b: &[RationalPoint]) -> Vec<RationalPoint> {
    let frame = Frame::new(a);
    let coords = frame.interpolate(a);
    let Some((beta, residual)) = barycentric_forms(b, &coords) else {
        return Vec::new();
    };
    let mut ineqs = frame.simplex_bounds();
    ineqs.extend(beta);
    vertices(&frame, &residual, &ineqs)
}

/// Vertices (ambient) of `{eqs = 0, ineqs >= 0}` inside `frame`.
pub(crate) fn vertices(frame: &Frame, eqs: &[Form], ineqs: &[Form]) -> Vec<RationalPoint> {
    cell(frame.dim(), eqs, ineqs)
        .map(|c| c.mu.iter().map(|x| frame.point(x)).collect())
        .unwrap_or_default()
}
