//! A rigid Casimir cavity held fixed in a Schwarzschild field.
//!
//! For a source of mass M at circumferential radius r, with alpha = 2GM/c^2,
//! the static vacuum energy acquires the red-shift factor
//!
//! ```text
//! U(r) = U_flat * (1 - alpha/r)^{3/2}
//! ```
//!
//! (one power of sqrt(1 - alpha/r) from the clock rate, two more from the
//! proper radial thickness of the rigid gap). Since U_flat < 0, U decreases
//! toward U_flat as r grows: holding the cavity closer to the mass costs
//! energy, so the constraint feels a net outward push
//!
//! ```text
//! F(r) = -dU/dr = (3/2) |U_flat| (alpha / r^2) sqrt(1 - alpha/r)
//! ```
//!
//! reported here as a positive magnitude directed against the local
//! gravitational acceleration. To leading order in alpha/r this is
//! F = |F_Casimir| * (a g / c^2): the attractive force between the plates
//! times the dimensionless gravitational potential difference across the
//! (optical) gap.
//!
//! The treatment assumes the cavity is small against the field's scale;
//! geometries larger than [`SIZE_LIMIT_RATIO`] times r are rejected.

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{require_finite_positive, Error, Result};
use crate::geometry::CavityGeometry;
use crate::ideal;

/// Largest allowed cavity extent as a fraction of the distance to the source.
pub const SIZE_LIMIT_RATIO: f64 = 1e-3;

/// Below this alpha/r the first-order force is good to about a part in 10^3.
pub const WEAK_FIELD_RATIO: f64 = 1e-3;

/// Reference values for a laboratory on Earth.
pub const EARTH_MASS: f64 = 5.972e24;
pub const EARTH_RADIUS: f64 = 6.371e6;

/// A spherically symmetric mass and a hover radius outside its horizon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GravitationalSource {
    mass: f64,
    radius: f64,
    alpha: f64,
    metric_factor: f64,
    local_gravity: f64,
}

impl GravitationalSource {
    pub fn new(mass: f64, radius: f64, constants: &PhysicalConstants) -> Result<Self> {
        let mass = require_finite_positive("mass", mass)?;
        let radius = require_finite_positive("radius", radius)?;
        let alpha =
            2.0 * constants.gravitational_constant() * mass / (constants.c() * constants.c());
        if radius <= alpha {
            return Err(Error::Horizon { radius, alpha });
        }
        Ok(GravitationalSource {
            mass,
            radius,
            alpha,
            metric_factor: 1.0 - alpha / radius,
            local_gravity: constants.gravitational_constant() * mass / (radius * radius),
        })
    }

    pub fn earth(constants: &PhysicalConstants) -> Self {
        Self::new(EARTH_MASS, EARTH_RADIUS, constants)
            .expect("Earth is comfortably outside its own horizon")
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Schwarzschild length 2GM/c^2, m.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// 1 - alpha/r, the time-time metric component at the hover radius.
    pub fn metric_factor(&self) -> f64 {
        self.metric_factor
    }

    /// Newtonian acceleration GM/r^2 at the hover radius, m/s^2.
    pub fn local_gravity(&self) -> f64 {
        self.local_gravity
    }

    /// Whether alpha/r is small enough for the first-order force to hold.
    pub fn weak_field_valid(&self) -> bool {
        self.alpha / self.radius < WEAK_FIELD_RATIO
    }

    fn admit(&self, geometry: &CavityGeometry) -> Result<()> {
        let limit = self.radius * SIZE_LIMIT_RATIO;
        if geometry.extent() > limit {
            return Err(Error::GeometryTooLarge {
                extent: geometry.extent(),
                radius: self.radius,
                limit,
            });
        }
        Ok(())
    }
}

/// Cavity vacuum energy including the red-shift factor, J.
pub fn redshifted_energy(
    geometry: &CavityGeometry,
    source: &GravitationalSource,
    constants: &PhysicalConstants,
) -> Result<f64> {
    source.admit(geometry)?;
    let flat = ideal::casimir_energy(geometry, constants)?;
    let metric = source.metric_factor();
    Ok(flat * (metric * metric.sqrt()))
}

/// Magnitude of the outward force on the cavity's support, N, exact in
/// alpha/r.
pub fn force_exact(
    geometry: &CavityGeometry,
    source: &GravitationalSource,
    constants: &PhysicalConstants,
) -> Result<f64> {
    source.admit(geometry)?;
    let flat = ideal::casimir_energy(geometry, constants)?;
    let r = source.radius();
    Ok(1.5 * flat.abs() * (source.alpha() / (r * r)) * source.metric_factor().sqrt())
}

/// The weak-field force written as the plate attraction times the
/// gravitational potential difference across the gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForceFactorization {
    /// |F_Casimir| between the plates, N.
    pub casimir_force: f64,
    /// a g / c^2 across the optical gap, dimensionless.
    pub potential_difference: f64,
    /// Their product: the outward force magnitude, N.
    pub force: f64,
}

/// Weak-field outward force via the factorized form. Accepts g = 0 (no
/// field, no force); rejects negative or non-finite g.
pub fn force_as_potential_difference(
    geometry: &CavityGeometry,
    g: f64,
    constants: &PhysicalConstants,
) -> Result<ForceFactorization> {
    if !g.is_finite() || g < 0.0 {
        return Err(Error::domain(
            "g",
            g,
            "local gravitational acceleration must be finite and non-negative",
        ));
    }
    let casimir_force = ideal::casimir_force_magnitude(geometry, constants)?;
    let potential_difference = geometry.optical_gap() * g / (constants.c() * constants.c());
    Ok(ForceFactorization {
        casimir_force,
        potential_difference,
        force: casimir_force * potential_difference,
    })
}

/// Magnitude of the outward force to leading order in the field strength, N.
pub fn force_weak_field(
    geometry: &CavityGeometry,
    g: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    Ok(force_as_potential_difference(geometry, g, constants)?.force)
}
