use super::{z_homeomorphism_onto, ZRetraction};
use crate::error::{Error, Result};
use crate::geometry::polyhedra_equal;
use crate::mcnaughton::{compose, pwl_equal, restrict};

fn check_dims(sigma: &ZRetraction, tau: &ZRetraction) -> Result<()> {
    if sigma.ambient_dim() != tau.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: sigma.ambient_dim(),
            found: tau.ambient_dim(),
        });
    }
    Ok(())
}

/// Whether the two retractions have the same range.
pub fn same_range(sigma: &ZRetraction, tau: &ZRetraction) -> Result<bool> {
    check_dims(sigma, tau)?;
    Ok(polyhedra_equal(sigma.range(), tau.range()))
}

/// Whether the two retractions determine the same subalgebra of the free
/// MV-algebra, i.e. `f ∘ σ = f` exactly when `f ∘ τ = f`.
///
/// With equal ranges this holds iff the maps coincide. Otherwise it holds iff
/// `σ` restricted to the range of `τ` is a Z-homeomorphism onto the range of
/// `σ` and `σ ∘ τ = σ`.
pub fn same_algebra(sigma: &ZRetraction, tau: &ZRetraction) -> Result<bool> {
    check_dims(sigma, tau)?;
    if polyhedra_equal(sigma.range(), tau.range()) {
        return pwl_equal(sigma.map(), tau.map());
    }
    let on_tau = restrict(sigma.map(), tau.range())?;
    if !z_homeomorphism_onto(&on_tau, sigma.range())? {
        return Ok(false);
    }
    pwl_equal(&compose(sigma.map(), tau.map())?, sigma.map())
}
