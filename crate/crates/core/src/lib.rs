//! Exact piecewise-linear toolkit for retractions of free MV-algebras.
//!
//! Terms of Łukasiewicz logic compile to [`PwlMap`]s with integer affine
//! pieces over rational triangulations. On top of that sit the decision
//! procedures for idempotence, ranges, Z-homeomorphism domains and the
//! multiplicity of a retraction.

pub mod arith;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod geometry;
pub mod lang;
pub mod mcnaughton;
pub mod retract;
pub mod svg;

pub use arith::{HomogeneousVector, Rational, RationalPoint};
pub use error::{Error, Result};
pub use geometry::{RationalSimplex, Triangulation};
pub use lang::{parse, MvTerm};
pub use mcnaughton::{AffinePiece, PwlMap};
pub use retract::{verify_z_retraction, MultiplicityReport, ZRetraction};
