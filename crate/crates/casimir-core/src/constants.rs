//! Physical constants and the combinations the cavity formulas reuse.
//!
//! Values follow CODATA 2018: `hbar` = 1.054571817e-34 J s,
//! `c` = 299792458 m/s (exact), `G` = 6.67430e-11 m^3/(kg s^2). The standard
//! acceleration of free fall, 9.80665 m/s^2, is exact by definition.
//!
//! The derived products `hbar*c`, `pi^2*hbar*c/720` (energy per area at unit
//! gap) and `pi^2*hbar*c/240` (pressure at unit gap) are precomputed once so
//! every downstream formula multiplies by the same bits. The pressure
//! coefficient is stored as exactly `3 *` the energy coefficient, which keeps
//! the energy/pressure ratio free of independent rounding.

use serde::Serialize;

use crate::error::{require_finite_positive, Result};

/// Reduced Planck constant, J s (CODATA 2018).
pub const HBAR: f64 = 1.054571817e-34;

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Newtonian constant of gravitation, m^3 kg^-1 s^-2 (CODATA 2018).
pub const GRAVITATIONAL_CONSTANT: f64 = 6.674_30e-11;

/// Standard acceleration of free fall, m/s^2 (exact by definition).
pub const STANDARD_GRAVITY: f64 = 9.806_65;

/// Fundamental constants plus the precomputed combinations used throughout.
///
/// Constructing this once and passing it by reference keeps every formula on
/// the same bits, so identities between quantities (for instance pressure =
/// 3 * energy density / gap) survive at full floating-point precision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhysicalConstants {
    hbar: f64,
    c: f64,
    gravitational_constant: f64,
    hbar_c: f64,
    pi_sq_hbar_c_over_720: f64,
    pi_sq_hbar_c_over_240: f64,
}

impl PhysicalConstants {
    /// Builds the constant set from explicit values of hbar, c, and G.
    ///
    /// Accepting the fundamental constants as inputs keeps unit-system
    /// experiments and linearity checks honest: every derived coefficient is
    /// recomputed from exactly these values.
    pub fn new(hbar: f64, c: f64, gravitational_constant: f64) -> Result<Self> {
        let hbar = require_finite_positive("hbar", hbar)?;
        let c = require_finite_positive("c", c)?;
        let gravitational_constant =
            require_finite_positive("gravitational_constant", gravitational_constant)?;
        let hbar_c = hbar * c;
        let pi_sq_hbar_c_over_720 = std::f64::consts::PI * std::f64::consts::PI * hbar_c / 720.0;
        Ok(PhysicalConstants {
            hbar,
            c,
            gravitational_constant,
            hbar_c,
            pi_sq_hbar_c_over_720,
            pi_sq_hbar_c_over_240: 3.0 * pi_sq_hbar_c_over_720,
        })
    }

    /// CODATA 2018 values.
    pub fn codata() -> Self {
        Self::new(HBAR, SPEED_OF_LIGHT, GRAVITATIONAL_CONSTANT)
            .expect("CODATA constants are finite and positive")
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn gravitational_constant(&self) -> f64 {
        self.gravitational_constant
    }

    /// hbar * c, J m.
    pub fn hbar_c(&self) -> f64 {
        self.hbar_c
    }

    /// pi^2 hbar c / 720, the magnitude of the ideal energy per unit area at
    /// unit gap, J/m^2 * m^3.
    pub fn pi_sq_hbar_c_over_720(&self) -> f64 {
        self.pi_sq_hbar_c_over_720
    }

    /// pi^2 hbar c / 240, the magnitude of the ideal pressure at unit gap,
    /// Pa * m^4. Exactly three times [`Self::pi_sq_hbar_c_over_720`].
    pub fn pi_sq_hbar_c_over_240(&self) -> f64 {
        self.pi_sq_hbar_c_over_240
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata()
    }
}
