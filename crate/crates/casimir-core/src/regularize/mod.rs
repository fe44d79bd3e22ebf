//! Regularization of the divergent cavity mode sum.
//!
//! After the transverse momentum integral of the half-space mode density is
//! reduced analytically (see [`k_integral_reduction`]), the vacuum energy per
//! unit area collapses to
//!
//! ```text
//! E / A = k_integral_reduction(pi / a) * sum_{n >= 1} n^3
//! ```
//!
//! and all divergence lives in the bare sum of cubes. A regularization
//! method assigns it the finite part 1/120 (the analytic continuation of the
//! sum at exponent -3); the corresponding dimensionless energy coefficient
//! -(pi^2/6) * finite_part recovers -pi^2/720.
//!
//! Two independent methods are provided and must agree:
//!
//! * `abel-plana`: the sum-minus-integral difference as a single convergent
//!   integral, evaluated adaptively ([`abel_plana`]).
//! * `exponential-cutoff`: damp each mode by exp(-eps n), subtract the
//!   divergent 6/eps^4 term, extrapolate eps -> 0 ([`cutoff`]).
//!
//! Methods implement [`RegularizationMethod`] and live in a registry keyed by
//! name, so callers select one at runtime ([`registry`]).

pub mod abel_plana;
pub mod cutoff;

use std::f64::consts::PI;
use std::sync::LazyLock;

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{require_finite_positive, Error, Result};
use crate::geometry::CavityGeometry;

/// How to evaluate the regularized mode sum.
///
/// `tolerance` is the relative accuracy target for the finite part. The
/// residual check is method-specific: the Abel-Plana integral drives its
/// quadrature below the target, while the cutoff method extrapolates a fixed
/// grid and reports failure when the extrapolation residual exceeds ten times
/// the target.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeSumSpec {
    pub method: String,
    pub tolerance: f64,
    pub max_subdivisions: usize,
    /// Damping parameters for the cutoff method, strictly decreasing in (0, 1).
    pub cutoff_values: Vec<f64>,
}

pub const DEFAULT_CUTOFF_VALUES: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

impl ModeSumSpec {
    /// Abel-Plana evaluation at a tight default tolerance.
    pub fn abel_plana() -> Self {
        ModeSumSpec {
            method: abel_plana::NAME.to_owned(),
            tolerance: 1e-10,
            max_subdivisions: 100,
            cutoff_values: DEFAULT_CUTOFF_VALUES.to_vec(),
        }
    }

    /// Exponential-cutoff evaluation.
    ///
    /// The default tolerance is looser than Abel-Plana's: the subtraction of
    /// the 6/eps^4 divergence costs about nine significant digits at the
    /// finest default eps, so demanding more than ~1e-5 would trip the
    /// residual check on rounding noise alone.
    pub fn exponential_cutoff() -> Self {
        ModeSumSpec {
            method: cutoff::NAME.to_owned(),
            tolerance: 1e-5,
            max_subdivisions: 100,
            cutoff_values: DEFAULT_CUTOFF_VALUES.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 1e-14 && self.tolerance < 1e-2) {
            return Err(Error::domain(
                "tolerance",
                self.tolerance,
                "must lie in (1e-14, 1e-2)",
            ));
        }
        if self.max_subdivisions == 0 || self.max_subdivisions > 10_000 {
            return Err(Error::domain(
                "max_subdivisions",
                self.max_subdivisions as f64,
                "must lie in 1..=10000",
            ));
        }
        if self.cutoff_values.len() < 3 {
            return Err(Error::domain(
                "cutoff_values",
                self.cutoff_values.len() as f64,
                "need at least three damping parameters",
            ));
        }
        for pair in self.cutoff_values.windows(2) {
            if pair[1] >= pair[0] {
                return Err(Error::domain(
                    "cutoff_values",
                    pair[1],
                    "must be strictly decreasing",
                ));
            }
        }
        for &eps in &self.cutoff_values {
            if !(eps > 0.0 && eps < 1.0) || !eps.is_finite() {
                return Err(Error::domain(
                    "cutoff_values",
                    eps,
                    "each damping parameter must lie in (0, 1)",
                ));
            }
        }
        Ok(())
    }
}

/// Outcome of regularizing the mode sum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularizationResult {
    pub method: String,
    /// Regularized value of the sum of cubes; 1/120 in exact arithmetic.
    pub finite_part: f64,
    /// -(pi^2/6) * finite_part; -pi^2/720 in exact arithmetic.
    pub energy_coefficient: f64,
    /// Absolute uncertainty on `finite_part`, combining the method's own
    /// error estimate with analytic truncation bounds.
    pub error_estimate: f64,
    pub diagnostics: Diagnostics,
}

impl RegularizationResult {
    pub(crate) fn new(
        method: &str,
        finite_part: f64,
        error_estimate: f64,
        diagnostics: Diagnostics,
    ) -> Self {
        RegularizationResult {
            method: method.to_owned(),
            finite_part,
            energy_coefficient: -(PI * PI / 6.0) * finite_part,
            error_estimate,
            diagnostics,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Diagnostics {
    Quadrature {
        subdivisions: usize,
        evaluations: usize,
        quadrature_error: f64,
        /// Bound on the discarded integrand tail beyond `upper_limit`.
        tail_bound: f64,
        upper_limit: f64,
    },
    Extrapolation {
        steps: Vec<ExtrapolationStep>,
        /// Rounding-noise floor of the divergence subtraction at the finest eps.
        rounding_floor: f64,
    },
}

/// One damped partial evaluation used by the extrapolation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtrapolationStep {
    pub epsilon: f64,
    pub partial_finite_part: f64,
}

/// A named strategy for assigning the divergent mode sum its finite part.
pub trait RegularizationMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn regularize(&self, spec: &ModeSumSpec) -> Result<RegularizationResult>;
}

/// Registry of available [`RegularizationMethod`] strategies, keyed by name.
pub struct MethodRegistry {
    methods: Vec<Box<dyn RegularizationMethod>>,
}

impl MethodRegistry {
    fn new() -> Self {
        MethodRegistry {
            methods: Vec::new(),
        }
    }

    fn register(&mut self, method: Box<dyn RegularizationMethod>) {
        debug_assert!(
            self.by_name(method.name()).is_none(),
            "duplicate registration"
        );
        self.methods.push(method);
    }

    pub fn by_name(&self, name: &str) -> Option<&dyn RegularizationMethod> {
        self.methods
            .iter()
            .find(|m| m.name() == name)
            .map(Box::as_ref)
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn RegularizationMethod> {
        self.methods.iter().map(Box::as_ref)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }
}

static REGISTRY: LazyLock<MethodRegistry> = LazyLock::new(|| {
    let mut registry = MethodRegistry::new();
    registry.register(Box::new(abel_plana::AbelPlana));
    registry.register(Box::new(cutoff::ExponentialCutoff));
    registry
});

pub fn registry() -> &'static MethodRegistry {
    &REGISTRY
}

/// Looks a method up by name, listing the alternatives on failure.
pub fn lookup(name: &str) -> Result<&'static dyn RegularizationMethod> {
    registry().by_name(name).ok_or_else(|| Error::UnknownMethod {
        name: name.to_owned(),
        available: registry().names().join(", "),
    })
}

/// Validates the parameters and dispatches to the method they name.
pub fn regularized_mode_sum(spec: &ModeSumSpec) -> Result<RegularizationResult> {
    spec.validate()?;
    lookup(&spec.method)?.regularize(spec)
}

/// Analytic reduction of the transverse momentum integral, J/m^2 per unit
/// of the dimensionless mode index cubed:
///
/// ```text
/// hbar c * integral d^2k/(2 pi)^2 sqrt(k^2 + kappa^2)  ->  -hbar c kappa^3 / (6 pi)
/// ```
///
/// The integral diverges; the right side is its analytic continuation in the
/// exponent, the same assignment that gives the sum of cubes its finite part.
pub fn k_integral_reduction(kappa: f64, constants: &PhysicalConstants) -> Result<f64> {
    let kappa = require_finite_positive("kappa", kappa)?;
    let value = -(constants.hbar_c() * kappa * kappa * kappa) / (6.0 * PI);
    if !value.is_finite() {
        return Err(Error::domain("kappa", kappa, "reduction overflows"));
    }
    Ok(value)
}

/// Cavity energy assembled from the regularized mode sum instead of the
/// closed form: an independent numerical route to the same number.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleEnergy {
    /// area * k_integral_reduction(pi / optical_gap) * finite_part, J.
    pub energy: f64,
    /// Absolute bound propagated from the finite part's error estimate.
    pub error_bound: f64,
    pub regularization: RegularizationResult,
}

pub fn oracle_energy(
    spec: &ModeSumSpec,
    geometry: &CavityGeometry,
    constants: &PhysicalConstants,
) -> Result<OracleEnergy> {
    let regularization = regularized_mode_sum(spec)?;
    let scale = geometry.area() * k_integral_reduction(PI / geometry.optical_gap(), constants)?;
    let energy = scale * regularization.finite_part;
    if !energy.is_finite() {
        return Err(Error::domain(
            "gap",
            geometry.gap(),
            "mode-sum energy overflows at this gap and area",
        ));
    }
    Ok(OracleEnergy {
        energy,
        error_bound: scale.abs() * regularization.error_estimate,
        regularization,
    })
}
