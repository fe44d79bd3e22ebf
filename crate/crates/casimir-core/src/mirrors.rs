//! Finite-conductivity mirror corrections from the zero-temperature
//! Lifshitz formula in the plasma model.
//!
//! Real mirrors reflect poorly above their plasma frequency, which weakens
//! the Casimir effect most at small gaps. With the plasma permittivity
//! eps(i xi) = 1 + omega_p^2 / xi^2 evaluated on the imaginary axis, the
//! pressure between identical thick mirrors at gap a becomes
//!
//! ```text
//! P(a) = -(hbar c / (32 pi^2 a^4)) * I_P(w),      w = 4 pi a / lambda_p
//!
//! I_P(w) = integral_0^inf dx x^3 [ g_TE(x) + integral_0^1 dt g_TM(x, t) ]
//! ```
//!
//! where g = q / (1 - q), q = r^2 e^{-x}, and the Fresnel coefficients in
//! scaled variables (x_m = sqrt(x^2 + w^2), eps = 1 + w^2 / (x t)^2) are
//!
//! ```text
//! r_TE = (x - x_m) / (x + x_m)        r_TM = (1 - s) / (1 + s),  s = x_m / (eps x)
//! ```
//!
//! Perfect mirrors (w -> inf) give I_P = 2 pi^4 / 15 and recover the ideal
//! pressure, so eta = I_P(w) / (2 pi^4 / 15) is the reduction factor that
//! multiplies the ideal force. The energy analogue replaces x^3 g by
//! x^2 ln(1 - q) with perfect-mirror value -2 pi^4 / 45.
//!
//! Numerically, 1 - q is assembled from 1 - r^2 and 1 - e^{-x} so that no
//! cancellation occurs as x -> 0, and s is evaluated in the rearranged form
//! s = x_m x t^2 / (x^2 t^2 + w^2), finite at t = 0. The x integral is
//! truncated at x = 50 with the discarded tail bounded analytically and
//! folded into the reported error.

use std::cell::RefCell;
use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{require_finite_positive, Error, Result};
use crate::quadrature::Quadrature;

/// Plasma wavelength of aluminum, m.
pub const ALUMINUM_PLASMA_WAVELENGTH: f64 = 100e-9;

/// Refractive index of fused silica at optical frequencies.
pub const SILICA_REFRACTIVE_INDEX: f64 = 1.46;

const UPPER_LIMIT_X: f64 = 50.0;

/// A mirror characterized by its plasma wavelength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MirrorMaterial {
    plasma_wavelength: f64,
}

impl MirrorMaterial {
    pub fn new(plasma_wavelength: f64) -> Result<Self> {
        require_finite_positive("plasma_wavelength", plasma_wavelength)?;
        Ok(MirrorMaterial { plasma_wavelength })
    }

    pub fn aluminum() -> Self {
        MirrorMaterial {
            plasma_wavelength: ALUMINUM_PLASMA_WAVELENGTH,
        }
    }

    pub fn plasma_wavelength(&self) -> f64 {
        self.plasma_wavelength
    }

    /// w = 4 pi a / lambda_p, the gap in units of the mirror's skin scale.
    pub fn dimensionless_gap(&self, gap: f64) -> f64 {
        4.0 * PI * gap / self.plasma_wavelength
    }
}

/// A transparent spacer filling the gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpacerMaterial {
    refractive_index: f64,
}

impl SpacerMaterial {
    pub fn new(refractive_index: f64) -> Result<Self> {
        require_finite_positive("refractive_index", refractive_index)?;
        if refractive_index < 1.0 {
            return Err(Error::domain(
                "refractive_index",
                refractive_index,
                "must be at least 1",
            ));
        }
        Ok(SpacerMaterial { refractive_index })
    }

    pub fn vacuum() -> Self {
        SpacerMaterial {
            refractive_index: 1.0,
        }
    }

    pub fn silica() -> Self {
        SpacerMaterial {
            refractive_index: SILICA_REFRACTIVE_INDEX,
        }
    }

    pub fn refractive_index(&self) -> f64 {
        self.refractive_index
    }

    pub fn optical_gap(&self, gap: f64) -> f64 {
        self.refractive_index * gap
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LifshitzDiagnostics {
    pub outer_subdivisions: usize,
    pub outer_evaluations: usize,
    pub inner_evaluations: usize,
    pub inner_max_subdivisions: usize,
    /// Absolute quadrature estimate on the reported value's scale.
    pub quadrature_error: f64,
    /// Bound on the tail discarded beyond `upper_limit`, same scale.
    pub tail_bound: f64,
    pub upper_limit: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LifshitzResult {
    pub value: f64,
    pub error_estimate: f64,
    pub diagnostics: LifshitzDiagnostics,
}

/// Ratio of the plasma-model result to the ideal-mirror result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReductionFactor {
    pub eta: f64,
    pub error_estimate: f64,
    pub diagnostics: LifshitzDiagnostics,
}

#[derive(Clone, Copy)]
enum IntegralKind {
    Pressure,
    Energy,
}

impl IntegralKind {
    fn perfect_mirror_value(self) -> f64 {
        match self {
            IntegralKind::Pressure => 2.0 * PI.powi(4) / 15.0,
            IntegralKind::Energy => -2.0 * PI.powi(4) / 45.0,
        }
    }

    /// Bound on |integrand| integrated over (X, inf), using q <= e^{-x}.
    fn tail_bound(self, x: f64) -> f64 {
        let damping = (-x).exp() / (1.0 - (-x).exp());
        let moments = match self {
            IntegralKind::Pressure => x * x * x + 3.0 * x * x + 6.0 * x + 6.0,
            IntegralKind::Energy => x * x + 2.0 * x + 2.0,
        };
        2.0 * damping * moments
    }
}

/// One (x, t) evaluation of q = r^2 e^{-x} with a cancellation-free 1 - q.
struct Reflection {
    q: f64,
    one_minus_q: f64,
}

impl Reflection {
    fn new(r_squared: f64, one_minus_r_squared: f64, x: f64) -> Self {
        let e = (-x).exp();
        let one_minus_e = -(-x).exp_m1();
        Reflection {
            q: r_squared * e,
            one_minus_q: one_minus_r_squared + r_squared * one_minus_e,
        }
    }

    fn te(x: f64, x_m: f64) -> Self {
        let r = (x - x_m) / (x + x_m);
        let sum = x + x_m;
        Self::new(r * r, 4.0 * x * x_m / (sum * sum), x)
    }

    fn tm(x: f64, x_m: f64, w: f64, t: f64) -> Self {
        let s = x_m * x * t * t / (x * x * t * t + w * w);
        let r = (1.0 - s) / (1.0 + s);
        let sum = 1.0 + s;
        Self::new(r * r, 4.0 * s / (sum * sum), x)
    }

    fn mode_density(&self) -> f64 {
        self.q / self.one_minus_q
    }

    /// ln(1 - q). For small q the assembled 1 - q is all rounding noise
    /// around 1, so switch to ln_1p of the accurately known q itself.
    fn log_mode_weight(&self) -> f64 {
        if self.q < 0.5 {
            (-self.q).ln_1p()
        } else {
            self.one_minus_q.ln()
        }
    }
}

struct InnerStats {
    evaluations: usize,
    max_subdivisions: usize,
    /// Largest weight(x) * inner error estimate seen: a pointwise bound on
    /// the integrand error injected by the inner quadrature.
    max_weighted_error: f64,
}

/// Dimensionless mode integral I(w) with its error estimate.
fn mode_integral(w: f64, kind: IntegralKind) -> Result<(f64, f64, LifshitzDiagnostics)> {
    let outer = Quadrature::new(1e-9, 1e-18, 400);
    let inner = Quadrature::new(1e-10, 1e-22, 120);

    let inner_failure: RefCell<Option<Error>> = RefCell::new(None);
    let stats = RefCell::new(InnerStats {
        evaluations: 0,
        max_subdivisions: 0,
        max_weighted_error: 0.0,
    });

    let integrand = |x: f64| -> f64 {
        if x == 0.0 || inner_failure.borrow().is_some() {
            return 0.0;
        }
        let x_m = x.hypot(w);
        let te = Reflection::te(x, x_m);
        let tm = |t: f64| {
            let tm = Reflection::tm(x, x_m, w, t);
            match kind {
                IntegralKind::Pressure => tm.mode_density(),
                IntegralKind::Energy => tm.log_mode_weight(),
            }
        };
        match inner.integrate(&tm, 0.0, 1.0) {
            Ok(result) => {
                let weight = match kind {
                    IntegralKind::Pressure => x * x * x,
                    IntegralKind::Energy => x * x,
                };
                let mut stats = stats.borrow_mut();
                stats.evaluations += result.evaluations;
                stats.max_subdivisions = stats.max_subdivisions.max(result.subdivisions);
                stats.max_weighted_error =
                    stats.max_weighted_error.max(weight * result.error_estimate);
                let te_part = match kind {
                    IntegralKind::Pressure => te.mode_density(),
                    IntegralKind::Energy => te.log_mode_weight(),
                };
                weight * (te_part + result.value)
            }
            Err(error) => {
                *inner_failure.borrow_mut() = Some(error);
                0.0
            }
        }
    };

    let result = outer.integrate(&integrand, 0.0, UPPER_LIMIT_X)?;
    if let Some(error) = inner_failure.into_inner() {
        return Err(error);
    }

    let stats = stats.into_inner();
    let tail = kind.tail_bound(UPPER_LIMIT_X);
    let error_estimate =
        result.error_estimate + stats.max_weighted_error * UPPER_LIMIT_X + tail;
    let diagnostics = LifshitzDiagnostics {
        outer_subdivisions: result.subdivisions,
        outer_evaluations: result.evaluations,
        inner_evaluations: stats.evaluations,
        inner_max_subdivisions: stats.max_subdivisions,
        quadrature_error: result.error_estimate,
        tail_bound: tail,
        upper_limit: UPPER_LIMIT_X,
    };
    Ok((result.value, error_estimate, diagnostics))
}

fn scaled(
    value: f64,
    error: f64,
    mut diagnostics: LifshitzDiagnostics,
    scale: f64,
) -> (f64, f64, LifshitzDiagnostics) {
    diagnostics.quadrature_error *= scale.abs();
    diagnostics.tail_bound *= scale.abs();
    (value * scale, error * scale.abs(), diagnostics)
}

/// Plasma-model Casimir pressure at the given gap, Pa. Negative.
pub fn lifshitz_pressure(
    gap: f64,
    mirror: &MirrorMaterial,
    constants: &PhysicalConstants,
) -> Result<LifshitzResult> {
    let gap = require_finite_positive("gap", gap)?;
    let (integral, error, diagnostics) = mode_integral(mirror.dimensionless_gap(gap), IntegralKind::Pressure)?;
    let prefactor = constants.hbar_c() / (32.0 * PI * PI * gap * gap * gap * gap);
    if !prefactor.is_finite() {
        return Err(Error::domain("gap", gap, "pressure overflows at this gap"));
    }
    let (value, error_estimate, diagnostics) = scaled(integral, error, diagnostics, -prefactor);
    Ok(LifshitzResult {
        value,
        error_estimate,
        diagnostics,
    })
}

/// Plasma-model Casimir energy per unit plate area, J/m^2. Negative.
pub fn lifshitz_energy_per_area(
    gap: f64,
    mirror: &MirrorMaterial,
    constants: &PhysicalConstants,
) -> Result<LifshitzResult> {
    let gap = require_finite_positive("gap", gap)?;
    let (integral, error, diagnostics) = mode_integral(mirror.dimensionless_gap(gap), IntegralKind::Energy)?;
    let prefactor = constants.hbar_c() / (32.0 * PI * PI * gap * gap * gap);
    if !prefactor.is_finite() {
        return Err(Error::domain("gap", gap, "energy overflows at this gap"));
    }
    let (value, error_estimate, diagnostics) = scaled(integral, error, diagnostics, prefactor);
    Ok(LifshitzResult {
        value,
        error_estimate,
        diagnostics,
    })
}

fn reduction(gap: f64, mirror: &MirrorMaterial, kind: IntegralKind) -> Result<ReductionFactor> {
    let gap = require_finite_positive("gap", gap)?;
    let (integral, error, diagnostics) = mode_integral(mirror.dimensionless_gap(gap), kind)?;
    let (eta, error_estimate, diagnostics) =
        scaled(integral, error, diagnostics, 1.0 / kind.perfect_mirror_value());
    Ok(ReductionFactor {
        eta,
        error_estimate,
        diagnostics,
    })
}

/// Force (pressure) reduction factor eta in (0, 1): the fraction of the
/// ideal-mirror force that survives finite conductivity. Dimensionless, so
/// no constants are involved.
pub fn reduction_factor(gap: f64, mirror: &MirrorMaterial) -> Result<ReductionFactor> {
    reduction(gap, mirror, IntegralKind::Pressure)
}

/// Energy reduction factor: same construction with the energy integrand.
pub fn reduction_factor_energy(gap: f64, mirror: &MirrorMaterial) -> Result<ReductionFactor> {
    reduction(gap, mirror, IntegralKind::Energy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn codata() -> PhysicalConstants {
        PhysicalConstants::codata()
    }

    fn eta_aluminum(gap: f64) -> f64 {
        reduction_factor(gap, &MirrorMaterial::aluminum()).unwrap().eta
    }

    #[test]
    fn aluminum_at_six_and_a_half_nanometers() {
        let r = reduction_factor(6.5e-9, &MirrorMaterial::aluminum()).unwrap();
        assert_relative_eq!(r.eta, 0.071_718_662_566_252_2, max_relative = 1e-6);
        assert!(r.eta > 0.05 && r.eta < 0.10);
        assert!(r.error_estimate < 1e-6 * r.eta);
    }

    #[test]
    fn pressure_reduction_reference_grid() {
        for (gap, expected) in [
            (2e-9, 0.023_525_304_577_414_94),
            (5e-9, 0.056_433_933_810_570_75),
            (7.3e-9, 0.079_574_534_256_238_59),
            (60e-9, 0.395_742_848_229_410_97),
            (1e-6, 0.920_860_511_886_860_7),
            (1e-4, 0.999_151_781_212_835_2),
        ] {
            assert_relative_eq!(eta_aluminum(gap), expected, max_relative = 1e-6);
        }
    }

    #[test]
    fn energy_reduction_reference_grid() {
        let al = MirrorMaterial::aluminum();
        for (gap, expected) in [
            (6.5e-9, 0.100_075_052_625_459_72),
            (60e-9, 0.478_058_703_684_433_3),
            (1e-6, 0.939_816_466_253_734),
        ] {
            let r = reduction_factor_energy(gap, &al).unwrap();
            assert_relative_eq!(r.eta, expected, max_relative = 1e-6);
        }
    }

    #[test]
    fn reduction_grows_with_gap_toward_perfect_mirrors() {
        let gaps = [2e-9, 5e-9, 6.5e-9, 7.3e-9, 60e-9, 1e-6, 1e-4];
        let mut previous = 0.0;
        for gap in gaps {
            let eta = eta_aluminum(gap);
            assert!(eta > previous, "eta should increase with gap");
            assert!(eta < 1.0);
            previous = eta;
        }
        assert!(previous > 0.99);
    }

    #[test]
    fn short_distance_reduction_scales_linearly_with_gap() {
        let slope = (eta_aluminum(2e-9) / eta_aluminum(4e-9)).ln() / (2.0f64 / 4.0).ln();
        assert!(
            (0.9..=1.1).contains(&slope),
            "short-distance log-log slope was {slope}"
        );
    }

    #[test]
    fn lifshitz_pressure_reference_value_and_consistency_with_eta() {
        let k = codata();
        let al = MirrorMaterial::aluminum();
        let p = lifshitz_pressure(6.5e-9, &al, &k).unwrap();
        assert_relative_eq!(p.value, -52_235.303_563_807_09, max_relative = 1e-6);
        let ideal = crate::ideal::casimir_pressure(6.5e-9, &k).unwrap();
        let eta = reduction_factor(6.5e-9, &al).unwrap().eta;
        assert_relative_eq!(p.value / ideal, eta, max_relative = 1e-12);
        assert!(p.value < 0.0 && p.value > ideal);
    }

    #[test]
    fn energy_per_area_is_negative_and_reduced() {
        let k = codata();
        let al = MirrorMaterial::aluminum();
        let e = lifshitz_energy_per_area(6.5e-9, &al, &k).unwrap();
        let gap = 6.5e-9f64;
        let ideal = -k.pi_sq_hbar_c_over_720() / (gap * gap * gap);
        assert!(e.value < 0.0 && e.value > ideal);
        assert_relative_eq!(e.value / ideal, 0.100_075_052_625_459_72, max_relative = 1e-6);
    }

    #[test]
    fn diagnostics_report_the_truncation_and_work_done() {
        let r = reduction_factor(6.5e-9, &MirrorMaterial::aluminum()).unwrap();
        assert_eq!(r.diagnostics.upper_limit, UPPER_LIMIT_X);
        assert!(r.diagnostics.tail_bound > 0.0 && r.diagnostics.tail_bound < 1e-17);
        assert!(r.diagnostics.outer_evaluations >= 15);
        assert!(r.diagnostics.inner_evaluations >= 15 * r.diagnostics.outer_evaluations / 2);
    }

    #[test]
    fn domain_violations_are_rejected() {
        let k = codata();
        let al = MirrorMaterial::aluminum();
        assert!(MirrorMaterial::new(0.0).is_err());
        assert!(MirrorMaterial::new(f64::NAN).is_err());
        assert!(SpacerMaterial::new(0.99).is_err());
        assert!(lifshitz_pressure(0.0, &al, &k).is_err());
        assert!(lifshitz_pressure(-1e-9, &al, &k).is_err());
        assert!(reduction_factor(f64::INFINITY, &al).is_err());
    }

    #[test]
    fn spacer_material_scales_gaps() {
        let silica = SpacerMaterial::silica();
        assert_eq!(silica.refractive_index(), 1.46);
        assert_eq!(silica.optical_gap(5e-9), 1.46 * 5e-9);
        assert_eq!(SpacerMaterial::vacuum().optical_gap(5e-9), 5e-9);
    }

    #[test]
    fn repeated_evaluations_are_bit_identical() {
        let al = MirrorMaterial::aluminum();
        let a = reduction_factor(6.5e-9, &al).unwrap();
        let b = reduction_factor(6.5e-9, &al).unwrap();
        assert_eq!(a.eta.to_bits(), b.eta.to_bits());
        assert_eq!(a.error_estimate.to_bits(), b.error_estimate.to_bits());
    }
}
