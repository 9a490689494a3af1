use rayon::prelude::*;

use super::ZRetraction;
use crate::arith::{Rational, RationalPoint};
use crate::error::{Error, Result};
use crate::geometry::polytope::{barycentric, simplex_meet};
use crate::geometry::triangulation::{bbox, bboxes_meet};
use crate::geometry::{desingularize, is_subset, RationalSimplex, Triangulation};
use crate::mcnaughton::{restrict, PwlMap};

/// Preimage under the affine bijection sending `verts[k]` to `images[k]`.
pub(crate) fn pull_point(verts: &[RationalPoint], images: &[RationalPoint], y: &RationalPoint) -> Option<RationalPoint> {
    let beta = barycentric(images, y)?;
    let n = verts[0].dim();
    Some(RationalPoint::new(
        (0..n)
            .map(|c| {
                verts
                    .iter()
                    .zip(&beta)
                    .map(|(v, b)| &v.coords()[c] * b)
                    .sum::<Rational>()
            })
            .collect(),
    ))
}

/// The image of a simplex is a regular simplex of the same dimension and
/// every vertex keeps its denominator.
pub(crate) fn is_unimodular_sheet(verts: &[RationalPoint], images: &[RationalPoint]) -> bool {
    let Ok(img) = RationalSimplex::new(images.to_vec()) else {
        return false;
    };
    img.dim() + 1 == verts.len()
        && img.is_regular()
        && verts
            .iter()
            .zip(images)
            .all(|(v, w)| v.denominator() == w.denominator())
}

/// No point of `img_a ∩ img_b` has two distinct preimages: the two inverse
/// affine maps agree on every vertex of the intersection.
pub(crate) fn sheets_compatible(
    a: (&[RationalPoint], &[RationalPoint]),
    b: (&[RationalPoint], &[RationalPoint]),
) -> bool {
    simplex_meet(a.1, b.1)
        .iter()
        .all(|y| pull_point(a.0, a.1, y) == pull_point(b.0, b.1, y))
}

/// Whether `f` maps `|domain(f)|` bijectively onto `|target|` with an
/// inverse that is again a Z-map.
///
/// After desingularizing the domain, every simplex must go to a regular
/// simplex of the same dimension with denominators preserved; injectivity is
/// checked pairwise on intersections of images, surjectivity by support
/// containment both ways (with a measure comparison first when the target is
/// full-dimensional).
pub fn z_homeomorphism_onto(f: &PwlMap, target: &Triangulation) -> Result<bool> {
    if f.codomain_dim() != target.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: target.ambient_dim(),
            found: f.codomain_dim(),
        });
    }
    let delta = desingularize(f.domain())?;
    let g = f.refined_to(&delta)?;
    let sheets: Vec<(Vec<RationalPoint>, Vec<RationalPoint>)> = (0..delta.len())
        .map(|i| (delta.simplex_points(i), g.simplex_image(i)))
        .collect();
    if !sheets.par_iter().all(|(v, w)| is_unimodular_sheet(v, w)) {
        return Ok(false);
    }
    let boxes: Vec<_> = sheets.iter().map(|(_, w)| bbox(w)).collect();
    let injective = (0..sheets.len()).into_par_iter().all(|i| {
        (i + 1..sheets.len()).all(|j| {
            !bboxes_meet(&boxes[i], &boxes[j])
                || sheets_compatible(
                    (sheets[i].0.as_slice(), sheets[i].1.as_slice()),
                    (sheets[j].0.as_slice(), sheets[j].1.as_slice()),
                )
        })
    });
    if !injective {
        return Ok(false);
    }
    let image = Triangulation::canonical(
        target.ambient_dim(),
        sheets
            .into_iter()
            .map(|(_, mut w)| {
                w.sort();
                w
            })
            .collect(),
    )
    .0;
    if target.is_closed_domain() && image.measure() != target.measure() {
        return Ok(false);
    }
    Ok(is_subset(&image, target) && is_subset(target, &image))
}

/// A regular triangulation linearizing a retraction, with the simplexes on
/// which the retraction is a Z-homeomorphism onto its image.
#[derive(Clone, Debug)]
pub struct HomeoSubcomplex {
    /// Regular refinement of the domain of the retraction.
    pub delta: Triangulation,
    /// The retraction expressed over `delta`.
    pub map: PwlMap,
    /// Indices of the maximal simplexes of `delta` whose image is a regular
    /// simplex of the same dimension with all vertex denominators preserved.
    pub nabla: Vec<usize>,
}

pub fn homeo_subcomplex(sigma: &ZRetraction) -> Result<HomeoSubcomplex> {
    let delta = desingularize(sigma.map().domain())?;
    let map = sigma.map().refined_to(&delta)?;
    let nabla = (0..delta.len())
        .into_par_iter()
        .filter(|&i| is_unimodular_sheet(&delta.simplex_points(i), &map.simplex_image(i)))
        .collect();
    Ok(HomeoSubcomplex { delta, map, nabla })
}

/// Whether the retraction maps the union of `simplexes` (all of full
/// dimension) bijectively onto its range.
pub fn certify_homeo_domain(sigma: &ZRetraction, simplexes: &[RationalSimplex]) -> Result<bool> {
    let n = sigma.ambient_dim();
    if let Some(s) = simplexes.iter().find(|s| s.dim() != n || s.ambient_dim() != n) {
        return Err(Error::ShapeMismatch(format!(
            "domain simplexes must be {n}-dimensional, found {}",
            s.dim()
        )));
    }
    if simplexes.is_empty() {
        return Ok(sigma.range().is_empty());
    }
    let domain = Triangulation::from_simplexes(n, simplexes.iter().cloned())?;
    if !domain.is_proper() {
        return Ok(false);
    }
    let restricted = restrict(sigma.map(), &domain)?;
    z_homeomorphism_onto(&restricted, sigma.range())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse;
    use crate::retract::verify_z_retraction;

    fn pt(c: &[(i64, i64)]) -> RationalPoint {
        RationalPoint::from_fractions(c)
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> RationalSimplex {
        RationalSimplex::new(vec![pt(&[a]), pt(&[b])]).unwrap()
    }

    fn retraction(src: &[&str]) -> ZRetraction {
        verify_z_retraction(&src.iter().map(|s| parse(s).unwrap()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn certify_examples() {
        let s = retraction(&["x1 /\\ ~x1"]);
        assert!(certify_homeo_domain(&s, &[seg((0, 1), (1, 2))]).unwrap());
        assert!(certify_homeo_domain(&s, &[seg((1, 2), (1, 1))]).unwrap());
        assert!(!certify_homeo_domain(&s, &[seg((0, 1), (1, 1))]).unwrap());
        assert!(!certify_homeo_domain(&s, &[seg((0, 1), (1, 4))]).unwrap());
        let point = RationalSimplex::new(vec![pt(&[(0, 1)])]).unwrap();
        assert!(matches!(
            certify_homeo_domain(&s, &[point]),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn subcomplex_examples() {
        let h = homeo_subcomplex(&retraction(&["x1 /\\ ~x1"])).unwrap();
        assert_eq!(h.nabla, vec![0, 1]);
        let xi = homeo_subcomplex(&retraction(&["x1", "0"])).unwrap();
        assert!(xi.nabla.is_empty());
        let id = homeo_subcomplex(&retraction(&["x1", "x2"])).unwrap();
        assert_eq!(id.nabla, (0..id.delta.len()).collect::<Vec<_>>());
    }

    #[test]
    fn doubling_is_not_a_homeomorphism_onto_the_cube() {
        let f = PwlMap::from_vertex_images(Triangulation::cube(1), |v| {
            RationalPoint::new(vec![v.coords()[0].clone() * Rational::from_integer(2.into())])
        });
        // x -> 2x leaves the cube, so build it on [0,1/2] instead.
        assert!(f.is_err());
        let half = Triangulation::from_simplexes(1, [seg((0, 1), (1, 2))]).unwrap();
        let g = PwlMap::from_vertex_images(half, |v| {
            RationalPoint::new(vec![v.coords()[0].clone() * Rational::from_integer(2.into())])
        })
        .unwrap();
        assert!(!z_homeomorphism_onto(&g, &Triangulation::cube(1)).unwrap());
    }
}
