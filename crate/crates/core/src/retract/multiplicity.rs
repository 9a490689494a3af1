use rayon::prelude::*;

use num_traits::Signed;

use super::homeo::{homeo_subcomplex, is_unimodular_sheet, sheets_compatible, z_homeomorphism_onto};
use super::ZRetraction;
use crate::arith::{Rational, RationalPoint};
use crate::error::Result;
use crate::geometry::polytope::{barycentric_forms, eval_form, Form};
use crate::geometry::refine::split_simplexes;
use crate::geometry::triangulation::{bbox, bboxes_meet};
use crate::geometry::{RationalSimplex, Triangulation};
use crate::mcnaughton::PwlMap;

/// Outcome of the multiplicity computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplicityReport {
    /// Exactly `count` Z-homeomorphism domains, listed in canonical order.
    Finite {
        count: usize,
        certificates: Vec<Triangulation>,
    },
    /// The range has a maximal simplex of dimension below `n`.
    Infinite { witness: RationalSimplex },
}

impl MultiplicityReport {
    pub fn count(&self) -> Option<usize> {
        match self {
            MultiplicityReport::Finite { count, .. } => Some(*count),
            MultiplicityReport::Infinite { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.count().is_some()
    }
}

/// One candidate piece of a domain: a simplex of the regular linearizing
/// triangulation together with the images of its vertices.
struct Sheet {
    verts: Vec<RationalPoint>,
    images: Vec<RationalPoint>,
    source: usize,
}

fn coordinate_forms(n: usize) -> Vec<Form> {
    (0..n)
        .map(|c| {
            let mut f = vec![Rational::from_integer(0.into()); n + 1];
            f[c] = Rational::from_integer(1.into());
            f
        })
        .collect()
}

/// Cuts the simplexes of the range along the facets of every image so that
/// each resulting atom lies inside or interior-disjoint from every image.
fn atoms(range: &Triangulation, sheets: &[Sheet]) -> Vec<Vec<RationalPoint>> {
    let n = range.ambient_dim();
    let coords = coordinate_forms(n);
    let mut atoms: Vec<Vec<RationalPoint>> = (0..range.len()).map(|i| range.simplex_points(i)).collect();
    for sheet in sheets {
        let (beta, _) = barycentric_forms(&sheet.images, &coords).expect("images are simplexes");
        let b = bbox(&sheet.images);
        for h in beta {
            let cuts: Vec<Option<Form>> = atoms
                .iter()
                .map(|a| bboxes_meet(&bbox(a), &b).then(|| h.clone()))
                .collect();
            atoms = split_simplexes(&atoms, &cuts).into_iter().map(|p| p.2).collect();
        }
    }
    atoms
}

struct ExactCover {
    covers: Vec<Vec<usize>>,
    by_atom: Vec<Vec<usize>>,
    compat: Vec<Vec<bool>>,
}

impl ExactCover {
    fn viable(&self, s: usize, covered: &[bool], chosen: &[usize]) -> bool {
        self.covers[s].iter().all(|&a| !covered[a]) && chosen.iter().all(|&c| self.compat[s][c])
    }

    /// The uncovered atom with fewest viable options, with those options;
    /// `None` when every atom is covered.
    fn branch(&self, covered: &[bool], chosen: &[usize]) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for (a, &done) in covered.iter().enumerate() {
            if done {
                continue;
            }
            let opts: Vec<usize> = self.by_atom[a]
                .iter()
                .copied()
                .filter(|&s| self.viable(s, covered, chosen))
                .collect();
            if best.as_ref().is_none_or(|b| opts.len() < b.len()) {
                let empty = opts.is_empty();
                best = Some(opts);
                if empty {
                    break;
                }
            }
        }
        best
    }

    fn search(&self, covered: &mut [bool], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(opts) = self.branch(covered, chosen) else {
            let mut sol = chosen.clone();
            sol.sort_unstable();
            out.push(sol);
            return;
        };
        for s in opts {
            self.take(s, covered, chosen, true);
            self.search(covered, chosen, out);
            self.take(s, covered, chosen, false);
        }
    }

    fn take(&self, s: usize, covered: &mut [bool], chosen: &mut Vec<usize>, on: bool) {
        for &a in &self.covers[s] {
            covered[a] = on;
        }
        if on {
            chosen.push(s);
        } else {
            chosen.pop();
        }
    }

    fn solve(&self) -> Vec<Vec<usize>> {
        let covered = vec![false; self.by_atom.len()];
        let Some(first) = self.branch(&covered, &[]) else {
            return vec![Vec::new()];
        };
        let mut out: Vec<Vec<usize>> = first
            .par_iter()
            .flat_map_iter(|&s| {
                let mut covered = covered.clone();
                let mut chosen = Vec::new();
                let mut found = Vec::new();
                self.take(s, &mut covered, &mut chosen, true);
                self.search(&mut covered, &mut chosen, &mut found);
                found
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Number of Z-homeomorphism domains of a retraction, i.e. of retractions
/// onto the algebra it generates.
///
/// When the range is not a closed domain the answer is infinite, witnessed by
/// its first lower-dimensional maximal simplex. Otherwise every domain is a
/// union of simplexes of the regular linearizing triangulation on which the
/// retraction is unimodular, so domains are the exact covers of the range by
/// such images that are injective along common boundaries. Each one found is
/// certified independently before it is reported.
pub fn multiplicity(sigma: &ZRetraction) -> Result<MultiplicityReport> {
    let n = sigma.ambient_dim();
    let range = sigma.range();
    if let Some(i) = (0..range.len()).find(|&i| range.simplex_dim(i) < n) {
        return Ok(MultiplicityReport::Infinite {
            witness: range.simplex(i),
        });
    }
    let h = homeo_subcomplex(sigma)?;
    let sheets: Vec<Sheet> = h
        .nabla
        .iter()
        .map(|&i| Sheet {
            verts: h.delta.simplex_points(i),
            images: h.map.simplex_image(i),
            source: i,
        })
        .filter(|s| is_unimodular_sheet(&s.verts, &s.images))
        .collect();

    let atoms = atoms(range, &sheets);
    let centers: Vec<RationalPoint> = atoms
        .iter()
        .map(|a| RationalSimplex::from_sorted_unchecked(a.clone()).barycenter())
        .collect();
    let coords = coordinate_forms(n);
    let covers: Vec<Vec<usize>> = sheets
        .par_iter()
        .map(|s| {
            let (beta, _) = barycentric_forms(&s.images, &coords).expect("images are simplexes");
            let b = bbox(&s.images);
            centers
                .iter()
                .enumerate()
                .filter(|(_, c)| {
                    bboxes_meet(&b, &(c.coords().to_vec(), c.coords().to_vec()))
                        && beta.iter().all(|f| !eval_form(f, c.coords()).is_negative())
                })
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    let mut by_atom = vec![Vec::new(); atoms.len()];
    for (s, cov) in covers.iter().enumerate() {
        for &a in cov {
            by_atom[a].push(s);
        }
    }
    let boxes: Vec<_> = sheets.iter().map(|s| bbox(&s.images)).collect();
    let compat: Vec<Vec<bool>> = (0..sheets.len())
        .into_par_iter()
        .map(|s| {
            (0..sheets.len())
                .map(|t| {
                    if s == t {
                        return false;
                    }
                    if !bboxes_meet(&boxes[s], &boxes[t]) {
                        return true;
                    }
                    let overlap = covers[s].iter().any(|a| covers[t].binary_search(a).is_ok());
                    !overlap
                        && sheets_compatible(
                            (sheets[s].verts.as_slice(), sheets[s].images.as_slice()),
                            (sheets[t].verts.as_slice(), sheets[t].images.as_slice()),
                        )
                })
                .collect()
        })
        .collect();

    let solutions = ExactCover {
        covers,
        by_atom,
        compat,
    }
    .solve();

    let mut certificates: Vec<Triangulation> = solutions
        .par_iter()
        .map(|sol| -> Result<Option<Triangulation>> {
            let cells = sol
                .iter()
                .map(|&s| (sheets[s].verts.clone(), h.map.pieces()[sheets[s].source].clone()))
                .collect();
            let piece = PwlMap::assemble(n, n, cells);
            Ok(z_homeomorphism_onto(&piece, range)?.then(|| piece.domain().clone()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    certificates.sort();
    Ok(MultiplicityReport::Finite {
        count: certificates.len(),
        certificates,
    })
}
