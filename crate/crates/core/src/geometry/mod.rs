//! Rational simplexes and triangulations: regularity, Farey mediants,
//! blow-ups, measure, and the subdivision machinery used by the PL calculus.

mod blowup;
pub(crate) mod polytope;
pub(crate) mod refine;
mod simplex;
pub(crate) mod triangulation;

pub use blowup::{blow_up, desingularize, desingularize_with_cap, DEFAULT_BLOW_UP_CAP};
pub use refine::{is_subset, polyhedra_equal, refine_along_hyperplane};
pub use simplex::RationalSimplex;
pub use triangulation::{
    interior_connected, is_closed_domain, is_strongly_regular_triangulation, Triangulation,
};
