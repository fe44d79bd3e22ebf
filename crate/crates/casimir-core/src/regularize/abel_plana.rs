//! Sum-minus-integral regularization.
//!
//! For f(n) = n^3 the difference between the mode sum and its continuum
//! integral collapses to a single rapidly convergent integral:
//!
//! ```text
//! sum_{n>=1} n^3  -  integral_0^inf x^3 dx  =  2 integral_0^inf t^3 / (e^{2 pi t} - 1) dt
//! ```
//!
//! The right side equals 2 * Gamma(4) zeta(4) / (2 pi)^4 = 1/120. The
//! integrand decays like t^3 e^{-2 pi t}, so truncating at t = 30 leaves a
//! tail below 1e-78, which is folded into the reported error estimate.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::Quadrature;

use super::{Diagnostics, ModeSumSpec, RegularizationMethod, RegularizationResult};

pub const NAME: &str = "abel-plana";

const UPPER_LIMIT: f64 = 30.0;

pub struct AbelPlana;

impl RegularizationMethod for AbelPlana {
    fn name(&self) -> &'static str {
        NAME
    }

    fn describe(&self) -> &'static str {
        "difference between the mode sum and its continuum integral, \
         evaluated as a convergent boundary integral by adaptive quadrature"
    }

    fn regularize(&self, spec: &ModeSumSpec) -> Result<RegularizationResult> {
        let quadrature = Quadrature::new(0.25 * spec.tolerance, 0.0, spec.max_subdivisions);
        let integral = quadrature.integrate(&integrand, 0.0, UPPER_LIMIT)?;

        let finite_part = 2.0 * integral.value;
        let tail_bound = 2.0 * truncation_tail(UPPER_LIMIT);
        let error_estimate = 2.0 * integral.error_estimate + tail_bound;
        if error_estimate > spec.tolerance * finite_part.abs() {
            return Err(Error::Convergence {
                what: "abel-plana regularization",
                detail: format!(
                    "error estimate {error_estimate:e} exceeds tolerance {:e} of the finite part",
                    spec.tolerance
                ),
            });
        }

        Ok(RegularizationResult::new(
            NAME,
            finite_part,
            error_estimate,
            Diagnostics::Quadrature {
                subdivisions: integral.subdivisions,
                evaluations: integral.evaluations,
                quadrature_error: 2.0 * integral.error_estimate,
                tail_bound,
                upper_limit: UPPER_LIMIT,
            },
        ))
    }
}

fn integrand(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t * t * t / (2.0 * PI * t).exp_m1()
    }
}

/// Bound on the discarded integral beyond `limit`:
/// 1/(1 - e^{-2 pi T}) times the closed form of integral_T^inf t^3 e^{-2 pi t} dt.
fn truncation_tail(limit: f64) -> f64 {
    let b = 2.0 * PI;
    let t = limit;
    let poly = t * t * t / b + 3.0 * t * t / (b * b) + 6.0 * t / (b * b * b) + 6.0 / (b * b * b * b);
    let damping = (-b * t).exp();
    damping / (1.0 - damping) * poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn recovers_one_over_one_twenty() {
        let r = AbelPlana.regularize(&ModeSumSpec::abel_plana()).unwrap();
        assert_relative_eq!(r.finite_part, 1.0 / 120.0, max_relative = 1e-12);
        let true_error = (r.finite_part - 1.0 / 120.0).abs();
        assert!(true_error <= r.error_estimate);
        assert!(r.error_estimate <= 1e-10 * r.finite_part);
    }

    #[test]
    fn tolerance_is_respected_not_ignored() {
        let mut spec = ModeSumSpec::abel_plana();
        spec.tolerance = 1e-6;
        let r = AbelPlana.regularize(&spec).unwrap();
        assert!(r.error_estimate <= 1e-6 * r.finite_part.abs());
    }

    #[test]
    fn diagnostics_expose_the_truncation() {
        let r = AbelPlana.regularize(&ModeSumSpec::abel_plana()).unwrap();
        match r.diagnostics {
            Diagnostics::Quadrature {
                tail_bound,
                upper_limit,
                evaluations,
                ..
            } => {
                assert_eq!(upper_limit, UPPER_LIMIT);
                assert!(tail_bound > 0.0 && tail_bound < 1e-70);
                assert!(evaluations >= 15);
            }
            other => panic!("expected quadrature diagnostics, got {other:?}"),
        }
    }

    #[test]
    fn starved_subdivision_budget_reports_convergence_failure() {
        let mut spec = ModeSumSpec::abel_plana();
        spec.tolerance = 1e-13;
        spec.max_subdivisions = 1;
        assert!(matches!(
            AbelPlana.regularize(&spec),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn repeated_runs_are_bit_identical() {
        let spec = ModeSumSpec::abel_plana();
        let a = AbelPlana.regularize(&spec).unwrap();
        let b = AbelPlana.regularize(&spec).unwrap();
        assert_eq!(a.finite_part.to_bits(), b.finite_part.to_bits());
        assert_eq!(a.error_estimate.to_bits(), b.error_estimate.to_bits());
    }
}
