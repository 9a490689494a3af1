use rayon::prelude::*;

use super::PwlMap;
use crate::arith::RationalPoint;
use crate::error::{Error, Result};
use crate::geometry::polytope::{sub_forms, triangulate, Frame};
use crate::geometry::refine::{intersect_cells, pullback};
use crate::geometry::{polyhedra_equal, Triangulation};

/// `f ∘ g`. The domain of `g` is refined until every simplex maps into a
/// single simplex of the domain of `f`.
pub fn compose(f: &PwlMap, g: &PwlMap) -> Result<PwlMap> {
    if g.codomain_dim() != f.ambient_dim() {
        return Err(Error::ShapeMismatch(format!(
            "cannot compose a map on R^{} after a map into R^{}",
            f.ambient_dim(),
            g.codomain_dim()
        )));
    }
    let sources: Vec<(Vec<RationalPoint>, Vec<RationalPoint>)> = (0..g.domain().len())
        .map(|i| (g.domain().simplex_points(i), g.simplex_image(i)))
        .collect();
    let (cells, covered) = pullback(&sources, f.domain());
    if covered.iter().any(|c| !c) {
        return Err(Error::NotASubset);
    }
    let cells = cells
        .into_iter()
        .map(|c| {
            let rows = f.pieces()[c.target]
                .iter()
                .map(|r| r.compose(&g.pieces()[c.parent]))
                .collect();
            (c.points, rows)
        })
        .collect();
    Ok(PwlMap::assemble(g.ambient_dim(), f.codomain_dim(), cells))
}

/// `f` restricted to `|q|`, over a refinement of `q` compatible with the
/// linearity domains of `f`.
pub fn restrict(f: &PwlMap, q: &Triangulation) -> Result<PwlMap> {
    if q.ambient_dim() != f.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.ambient_dim(),
            found: q.ambient_dim(),
        });
    }
    let (cells, covered) = intersect_cells(q, f.domain());
    if covered.iter().any(|c| !c) {
        return Err(Error::NotASubset);
    }
    let cells = cells
        .into_iter()
        .map(|c| (c.points, f.pieces()[c.target].clone()))
        .collect();
    Ok(PwlMap::assemble(f.ambient_dim(), f.codomain_dim(), cells))
}

/// Least point (lexicographically) among the vertices of the common
/// refinement where `f` and `g` differ; `None` when they are equal.
pub fn pwl_difference(f: &PwlMap, g: &PwlMap) -> Result<Option<RationalPoint>> {
    if f.ambient_dim() != g.ambient_dim() || f.codomain_dim() != g.codomain_dim() {
        return Err(Error::ShapeMismatch(format!(
            "maps R^{} -> R^{} and R^{} -> R^{}",
            f.ambient_dim(),
            f.codomain_dim(),
            g.ambient_dim(),
            g.codomain_dim()
        )));
    }
    if !polyhedra_equal(f.domain(), g.domain()) {
        return Err(Error::ShapeMismatch("domains have different supports".into()));
    }
    let (cells, _) = intersect_cells(f.domain(), g.domain());
    let witnesses: Vec<RationalPoint> = cells
        .par_iter()
        .filter_map(|c| {
            c.points
                .iter()
                .filter(|v| f.apply(c.parent, v) != g.apply(c.target, v))
                .min()
                .cloned()
        })
        .collect();
    Ok(witnesses.into_iter().min())
}

/// `f(x) = g(x)` on the common support.
pub fn pwl_equal(f: &PwlMap, g: &PwlMap) -> Result<bool> {
    Ok(pwl_difference(f, g)?.is_none())
}

/// Triangulation of `{x : f(x) = x}`, built simplex by simplex from the
/// solution polytopes of `piece(x) = x` and glued by their common faces.
pub fn fixed_point_set(f: &PwlMap) -> Result<Triangulation> {
    let n = f.ambient_dim();
    if f.codomain_dim() != n {
        return Err(Error::ShapeMismatch(format!(
            "fixed points of a map R^{n} -> R^{}",
            f.codomain_dim()
        )));
    }
    let pieces: Vec<Vec<Vec<RationalPoint>>> = (0..f.domain().len())
        .into_par_iter()
        .map(|i| {
            let verts = f.domain().simplex_points(i);
            let frame = Frame::new(&verts);
            let coords = frame.interpolate(&verts);
            let eqs: Vec<_> = f.pieces()[i]
                .iter()
                .zip(&coords)
                .map(|(r, x)| sub_forms(&frame.pull_back(&r.to_form()), x))
                .collect();
            triangulate(&frame, &eqs, &frame.simplex_bounds())
                .map(|(_, s)| s.into_iter().map(|(pts, _)| pts).collect())
                .unwrap_or_default()
        })
        .collect();
    Ok(Triangulation::canonical(n, pieces.into_iter().flatten().collect()).0)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::RationalSimplex;
    use crate::mcnaughton::AffinePiece;
    use crate::lang::parse;
    use crate::mcnaughton::compile;

    fn pt(c: &[(i64, i64)]) -> RationalPoint {
        RationalPoint::from_fractions(c)
    }

    fn map(src: &[&str], n: usize) -> PwlMap {
        let ts: Vec<_> = src.iter().map(|s| parse(s).unwrap()).collect();
        compile(&ts, n).unwrap()
    }

    fn segment(a: (i64, i64), b: (i64, i64)) -> Triangulation {
        Triangulation::from_simplexes(1, [RationalSimplex::new(vec![pt(&[a]), pt(&[b])]).unwrap()]).unwrap()
    }

    fn l_shape() -> Triangulation {
        let s = |a: &[(i64, i64)], b: &[(i64, i64)]| RationalSimplex::new(vec![pt(a), pt(b)]).unwrap();
        Triangulation::from_simplexes(
            2,
            [s(&[(0, 1), (1, 1)], &[(0, 1), (0, 1)]), s(&[(1, 1), (0, 1)], &[(0, 1), (0, 1)])],
        )
        .unwrap()
    }

    #[test]
    fn equality_examples() {
        assert!(pwl_equal(&map(&["~~x1"], 1), &map(&["x1"], 1)).unwrap());
        assert_eq!(
            pwl_difference(&map(&["x1 (+) x1"], 1), &map(&["x1"], 1)).unwrap(),
            Some(pt(&[(1, 2)]))
        );
        let s = map(&["x1 /\\ ~x1"], 1);
        assert!(pwl_equal(&compose(&s, &s).unwrap(), &s).unwrap());
    }

    #[test]
    fn composition_examples() {
        let s = map(&["x1 /\\ ~x1"], 1);
        let id = PwlMap::identity(Triangulation::cube(1));
        assert!(pwl_equal(&compose(&s, &id).unwrap(), &s).unwrap());
        let neg = map(&["~x1"], 1);
        assert_eq!(compose(&neg, &s).unwrap().evaluate(&pt(&[(1, 4)])).unwrap(), pt(&[(3, 4)]));
        let double = map(&["x1 (+) x1"], 1);
        assert_eq!(
            pwl_difference(&compose(&double, &double).unwrap(), &double).unwrap(),
            Some(pt(&[(1, 4)]))
        );
    }

    #[test]
    fn restriction_examples() {
        let s = map(&["x1 /\\ ~x1"], 1);
        let r = restrict(&s, &segment((1, 2), (1, 1))).unwrap();
        assert_eq!(r.pieces(), &[vec![AffinePiece::from_i64(&[-1], 1)]]);
        assert!(pwl_equal(&restrict(&s, s.domain()).unwrap(), &s).unwrap());
        let rho = map(&["x1 (-) x2", "x2 (-) x1"], 2);
        let on_l = restrict(&rho, &l_shape()).unwrap();
        assert!(pwl_equal(&on_l, &PwlMap::identity(l_shape())).unwrap());
        let small = restrict(&s, &segment((0, 1), (1, 2))).unwrap();
        assert_eq!(restrict(&small, &segment((0, 1), (1, 1))), Err(Error::NotASubset));
    }

    #[test]
    fn fixed_points() {
        assert_eq!(fixed_point_set(&map(&["x1 /\\ ~x1"], 1)).unwrap(), segment((0, 1), (1, 2)));
        assert_eq!(fixed_point_set(&PwlMap::identity(Triangulation::cube(2))).unwrap(), Triangulation::cube(2));
        assert_eq!(fixed_point_set(&map(&["x1 (-) x2", "x2 (-) x1"], 2)).unwrap(), l_shape());
        assert!(fixed_point_set(&map(&["~x1 /\\ 0"], 1)).unwrap().len() == 1);
    }
}
