//! Closed-form Casimir quantities for perfectly conducting parallel plates.
//!
//! For plate area A and (optical) gap a:
//!
//! * energy: U = -A pi^2 hbar c / (720 a^3), always negative;
//! * pressure: P = -pi^2 hbar c / (240 a^4), attractive;
//! * attractive force magnitude: |P| A;
//! * lowest resonant frequency: nu_min = c / (2 a), the longest standing
//!   wave the cavity supports.
//!
//! Functions taking a [`CavityGeometry`] use its optical gap, so a dielectric
//! spacer of index n weakens the energy by n^3 and the force by n^4.

use crate::constants::PhysicalConstants;
use crate::error::{require_finite_positive, Error, Result};
use crate::geometry::CavityGeometry;

/// Vacuum energy of the cavity, J. Negative for every valid geometry.
pub fn casimir_energy(geometry: &CavityGeometry, constants: &PhysicalConstants) -> Result<f64> {
    let a = geometry.optical_gap();
    let energy = -(constants.pi_sq_hbar_c_over_720() * geometry.area()) / (a * a * a);
    if !energy.is_finite() {
        return Err(Error::domain(
            "gap",
            geometry.gap(),
            "energy overflows at this gap and area",
        ));
    }
    Ok(energy)
}

/// Casimir pressure between ideal mirrors at the given gap, Pa. Negative
/// (the plates attract).
pub fn casimir_pressure(gap: f64, constants: &PhysicalConstants) -> Result<f64> {
    let gap = require_finite_positive("gap", gap)?;
    let pressure = -constants.pi_sq_hbar_c_over_240() / (gap * gap * gap * gap);
    if !pressure.is_finite() {
        return Err(Error::domain("gap", gap, "pressure overflows at this gap"));
    }
    Ok(pressure)
}

/// Magnitude of the attractive force between the plates, N.
pub fn casimir_force_magnitude(
    geometry: &CavityGeometry,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let pressure = casimir_pressure(geometry.optical_gap(), constants)?;
    let force = -pressure * geometry.area();
    if !force.is_finite() {
        return Err(Error::domain(
            "area",
            geometry.area(),
            "force overflows at this gap and area",
        ));
    }
    Ok(force)
}

/// Lowest resonant (fundamental) frequency of the cavity, Hz.
///
/// Takes the gap directly rather than a geometry: the mode structure of the
/// spacer-filled cavity is already expressed through the optical gap, so
/// callers pass whichever gap they mean.
pub fn fundamental_frequency(gap: f64, constants: &PhysicalConstants) -> Result<f64> {
    let gap = require_finite_positive("gap", gap)?;
    Ok(constants.c() / (2.0 * gap))
}
