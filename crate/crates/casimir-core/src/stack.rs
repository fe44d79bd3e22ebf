//! Force totals for a stack of rigid cavities and gap optimization under
//! fabrication constraints.
//!
//! A stack of N identical cavity layers multiplies the single-cavity
//! weak-field force: with reduction factor eta for real mirrors, plate area
//! A, spacer index n, and gap a,
//!
//! ```text
//! F_total = eta * N * A * pi^2 hbar c g / (240 (n a)^3 c^2)
//! ```
//!
//! computed here as eta * N * |F_Casimir(na)| * (na) g / c^2, the per-layer
//! factorized force times the layer count. The direction is outward,
//! opposing the local gravitational acceleration.
//!
//! Detectability compares the total against a reference force sensitivity
//! (default 5e-17 N, the scale quoted for kilometer-baseline interferometric
//! detectors). The predicted signal is static, while such sensitivities hold
//! near the detector band center, so the comparison is only meaningful with
//! a modulation scheme; reports carry a note saying exactly that.
//!
//! [`optimize_stack`] searches the gap that maximizes the total force when
//! the stack's total thickness is fixed: smaller gaps strengthen each layer
//! like a^-3 and admit more layers, while the mirror reduction eta collapses
//! linearly at small gaps. For physical parameter ranges the product still
//! falls with gap, so the search typically lands on the smallest allowed
//! gap; the dense trace it returns makes that conclusion checkable rather
//! than assumed.

use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{require_finite_positive, Error, Result};
use crate::geometry::CavityGeometry;
use crate::gravity;
use crate::mirrors::{self, MirrorMaterial, ReductionFactor, SpacerMaterial};

/// Reference force sensitivity, N: the quoted scale for kilometer-baseline
/// interferometric detectors near their band center.
pub const DEFAULT_NOISE_FLOOR: f64 = 5e-17;

/// Average mass density of the layered structure, kg/m^3 (silica-like).
pub const DEFAULT_DENSITY: f64 = 2400.0;

/// Default number of initial grid points for [`optimize_stack`].
pub const DEFAULT_GRID_POINTS: usize = 1024;

/// Note attached to every force report; see the module docs.
pub const STATIC_SIGNAL_NOTE: &str = "The predicted force is static (zero frequency), while the \
     reference sensitivity applies to signals near an interferometric detector's band center at \
     tens of hertz. Reaching that sensitivity therefore requires a modulation scheme that shifts \
     the cavity signal into the detector band.";

pub const FORCE_DIRECTION: &str = "outward, opposing the local gravitational acceleration";

/// Which gap the mirror reduction factor is evaluated at.
///
/// The plasma-model integral is derived for mirrors facing vacuum; with a
/// spacer, the mode structure sees the optical gap n a, so that is the
/// default. Reports carry eta at both gaps so the choice stays visible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EtaGap {
    Optical,
    Physical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StackConfig {
    pub layers: u64,
    pub disk_diameter: f64,
    pub gap: f64,
    /// Thickness of one layer including its structure; must exceed the gap.
    pub layer_pitch: f64,
    pub spacer: SpacerMaterial,
    pub mirror: MirrorMaterial,
    /// Local gravitational acceleration, m/s^2.
    pub g: f64,
    /// Fixed reduction factor to use instead of the plasma-model integral.
    pub reduction_override: Option<f64>,
    pub eta_evaluation_gap: EtaGap,
    /// Reference force sensitivity for the detectability verdict, N.
    pub noise_floor: f64,
    /// Average stack density for the weight comparison, kg/m^3.
    pub density: f64,
}

impl StackConfig {
    /// The worked reference design: a million layers on a 10 cm disk,
    /// 5 nm gaps at 100 nm pitch, silica spacers, aluminum mirrors,
    /// standard gravity.
    pub fn reference_design() -> Self {
        StackConfig {
            layers: 1_000_000,
            disk_diameter: 0.1,
            gap: 5e-9,
            layer_pitch: 100e-9,
            spacer: SpacerMaterial::silica(),
            mirror: MirrorMaterial::aluminum(),
            g: crate::constants::STANDARD_GRAVITY,
            reduction_override: None,
            eta_evaluation_gap: EtaGap::Optical,
            noise_floor: DEFAULT_NOISE_FLOOR,
            density: DEFAULT_DENSITY,
        }
    }

    /// Checks every field and reports all violations at once.
    pub fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        if self.layers == 0 {
            violations.push("layers must be at least 1".to_owned());
        }
        check_positive(&mut violations, "disk_diameter", self.disk_diameter);
        check_positive(&mut violations, "gap", self.gap);
        check_positive(&mut violations, "layer_pitch", self.layer_pitch);
        if self.gap.is_finite() && self.layer_pitch.is_finite() && self.gap >= self.layer_pitch {
            violations.push(format!(
                "gap {:e} m must be smaller than the layer pitch {:e} m",
                self.gap, self.layer_pitch
            ));
        }
        if !self.g.is_finite() || self.g < 0.0 {
            violations.push(format!("g = {:e} must be finite and non-negative", self.g));
        }
        check_positive(&mut violations, "noise_floor", self.noise_floor);
        check_positive(&mut violations, "density", self.density);
        if let Some(eta) = self.reduction_override {
            if !eta.is_finite() || eta <= 0.0 || eta > 1.0 {
                violations.push(format!(
                    "reduction_override = {eta:e} must lie in (0, 1]"
                ));
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig { violations })
        }
    }

    pub fn total_thickness(&self) -> f64 {
        self.layers as f64 * self.layer_pitch
    }

    fn geometry(&self) -> Result<CavityGeometry> {
        CavityGeometry::disk_with_spacer(
            self.disk_diameter,
            self.gap,
            self.spacer.refractive_index(),
        )
    }
}

fn check_positive(violations: &mut Vec<String>, name: &str, value: f64) {
    if !value.is_finite() || value <= 0.0 {
        violations.push(format!("{name} = {value:e} must be finite and positive"));
    }
}

/// Where the reduction factor in a report came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EtaSource {
    Override {
        value: f64,
    },
    PlasmaModel {
        evaluation_gap: EtaGap,
        at_optical_gap: f64,
        at_physical_gap: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Detectability {
    /// True when the total strictly exceeds the noise floor.
    pub detectable: bool,
    pub ratio: f64,
    pub noise_floor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightComparison {
    pub stack_mass: f64,
    pub stack_weight: f64,
    /// None when g = 0 (no weight to compare against).
    pub force_to_weight_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForceReport {
    /// Net outward force of the whole stack, N.
    pub force_total: f64,
    pub force_per_layer: f64,
    pub direction: &'static str,
    pub eta_used: f64,
    pub eta_source: EtaSource,
    pub optical_gap: f64,
    pub layers: u64,
    pub total_thickness: f64,
    pub detectability: Detectability,
    pub weight_comparison: WeightComparison,
    pub notes: Vec<&'static str>,
}

/// Strict comparison of a force magnitude against a sensitivity floor.
pub fn detectability(force: f64, noise_floor: f64) -> Result<Detectability> {
    if !force.is_finite() || force < 0.0 {
        return Err(Error::domain(
            "force",
            force,
            "must be a finite, non-negative magnitude",
        ));
    }
    require_finite_positive("noise_floor", noise_floor)?;
    Ok(Detectability {
        detectable: force > noise_floor,
        ratio: force / noise_floor,
        noise_floor,
    })
}

fn layered_force(
    layers: u64,
    geometry: &CavityGeometry,
    eta: f64,
    g: f64,
    constants: &PhysicalConstants,
) -> Result<(f64, f64)> {
    let weak = gravity::force_weak_field(geometry, g, constants)?;
    let per_layer = eta * weak;
    Ok((per_layer, layers as f64 * per_layer))
}

/// Evaluates the full stack force with its decomposition, comparisons, and caveats.
pub fn stack_force(config: &StackConfig, constants: &PhysicalConstants) -> Result<ForceReport> {
    config.validate()?;
    let geometry = config.geometry()?;

    let (eta_used, eta_source) = match config.reduction_override {
        Some(value) => (value, EtaSource::Override { value }),
        None => {
            let at_optical = mirrors::reduction_factor(geometry.optical_gap(), &config.mirror)?;
            let at_physical = mirrors::reduction_factor(config.gap, &config.mirror)?;
            let selected = match config.eta_evaluation_gap {
                EtaGap::Optical => at_optical.eta,
                EtaGap::Physical => at_physical.eta,
            };
            (
                selected,
                EtaSource::PlasmaModel {
                    evaluation_gap: config.eta_evaluation_gap,
                    at_optical_gap: at_optical.eta,
                    at_physical_gap: at_physical.eta,
                },
            )
        }
    };

    let (force_per_layer, force_total) =
        layered_force(config.layers, &geometry, eta_used, config.g, constants)?;
    let detectability = detectability(force_total, config.noise_floor)?;

    let stack_mass = config.density * geometry.area() * config.total_thickness();
    let stack_weight = stack_mass * config.g;
    let weight_comparison = WeightComparison {
        stack_mass,
        stack_weight,
        force_to_weight_ratio: (stack_weight > 0.0).then(|| force_total / stack_weight),
    };

    Ok(ForceReport {
        force_total,
        force_per_layer,
        direction: FORCE_DIRECTION,
        eta_used,
        eta_source,
        optical_gap: geometry.optical_gap(),
        layers: config.layers,
        total_thickness: config.total_thickness(),
        detectability,
        weight_comparison,
        notes: vec![STATIC_SIGNAL_NOTE],
    })
}

/// Number of layers of pitch `layer_overhead + gap` that fit in
/// `total_thickness`. The quotient is nudged by a few ulp before flooring so
/// representation rounding cannot drop a layer at exact integer boundaries.
pub fn layers_for_thickness(total_thickness: f64, layer_overhead: f64, gap: f64) -> Result<u64> {
    require_finite_positive("total_thickness", total_thickness)?;
    require_finite_positive("layer_overhead", layer_overhead)?;
    require_finite_positive("gap", gap)?;
    let quotient = total_thickness / (layer_overhead + gap);
    Ok((quotient * (1.0 + 4.0 * f64::EPSILON)).floor() as u64)
}

/// Fabrication constraints for the gap search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StackConstraints {
    pub gap_min: f64,
    pub gap_max: f64,
    /// Total stack thickness to fill, m.
    pub total_thickness: f64,
    /// Non-gap thickness per layer (mirrors plus support), m.
    pub layer_overhead: f64,
    pub disk_diameter: f64,
    pub spacer: SpacerMaterial,
    pub mirror: MirrorMaterial,
    pub g: f64,
    pub eta_evaluation_gap: EtaGap,
    pub grid_points: usize,
}

impl StackConstraints {
    pub fn new(
        gap_min: f64,
        gap_max: f64,
        total_thickness: f64,
        layer_overhead: f64,
        disk_diameter: f64,
    ) -> Self {
        StackConstraints {
            gap_min,
            gap_max,
            total_thickness,
            layer_overhead,
            disk_diameter,
            spacer: SpacerMaterial::silica(),
            mirror: MirrorMaterial::aluminum(),
            g: crate::constants::STANDARD_GRAVITY,
            eta_evaluation_gap: EtaGap::Optical,
            grid_points: DEFAULT_GRID_POINTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        check_positive(&mut violations, "gap_min", self.gap_min);
        check_positive(&mut violations, "gap_max", self.gap_max);
        if self.gap_min.is_finite() && self.gap_max.is_finite() && self.gap_min > self.gap_max {
            violations.push(format!(
                "gap_min {:e} m must not exceed gap_max {:e} m",
                self.gap_min, self.gap_max
            ));
        }
        check_positive(&mut violations, "total_thickness", self.total_thickness);
        check_positive(&mut violations, "layer_overhead", self.layer_overhead);
        check_positive(&mut violations, "disk_diameter", self.disk_diameter);
        if !self.g.is_finite() || self.g < 0.0 {
            violations.push(format!("g = {:e} must be finite and non-negative", self.g));
        }
        if self.grid_points < 2 && self.gap_min != self.gap_max {
            violations.push("grid_points must be at least 2".to_owned());
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig { violations })
        }
    }
}

/// One evaluated design during the gap search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub gap: f64,
    pub layers: u64,
    pub force_total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizedStack {
    pub gap: f64,
    pub layers: u64,
    pub layer_pitch: f64,
    pub force_total: f64,
    /// The winning design, ready for [`stack_force`].
    pub config: StackConfig,
    /// Every feasible design evaluated, in evaluation order.
    pub trace: Vec<TracePoint>,
    /// Grid points where not even one layer fit.
    pub infeasible_points: usize,
}

const REFINEMENT_ROUNDS: usize = 3;
const REFINEMENT_POINTS: usize = 17;

/// Searches the gap in [gap_min, gap_max] maximizing the total stack force
/// when layers of pitch `layer_overhead + gap` fill `total_thickness`.
///
/// Deterministic: a fixed linear grid followed by fixed-shape refinements
/// around the incumbent, ties broken toward the smaller gap.
pub fn optimize_stack(
    constraints: &StackConstraints,
    constants: &PhysicalConstants,
) -> Result<OptimizedStack> {
    constraints.validate()?;
    if layers_for_thickness(
        constraints.total_thickness,
        constraints.layer_overhead,
        constraints.gap_min,
    )? == 0
    {
        return Err(Error::Infeasible {
            constraint: format!(
                "total thickness {:e} m does not fit one layer of pitch {:e} m at the smallest gap",
                constraints.total_thickness,
                constraints.layer_overhead + constraints.gap_min
            ),
        });
    }

    let evaluate = |gap: f64| -> Result<Option<TracePoint>> {
        let layers =
            layers_for_thickness(constraints.total_thickness, constraints.layer_overhead, gap)?;
        if layers == 0 {
            return Ok(None);
        }
        let geometry = CavityGeometry::disk_with_spacer(
            constraints.disk_diameter,
            gap,
            constraints.spacer.refractive_index(),
        )?;
        let eta_gap = match constraints.eta_evaluation_gap {
            EtaGap::Optical => geometry.optical_gap(),
            EtaGap::Physical => gap,
        };
        let eta: ReductionFactor = mirrors::reduction_factor(eta_gap, &constraints.mirror)?;
        let (_, force_total) =
            layered_force(layers, &geometry, eta.eta, constraints.g, constants)?;
        Ok(Some(TracePoint {
            gap,
            layers,
            force_total,
        }))
    };

    let mut trace: Vec<TracePoint> = Vec::new();
    let mut infeasible_points = 0usize;
    let mut run_grid = |grid: &[f64], trace: &mut Vec<TracePoint>| -> Result<()> {
        for &gap in grid {
            match evaluate(gap)? {
                Some(point) => trace.push(point),
                None => infeasible_points += 1,
            }
        }
        Ok(())
    };

    let span = constraints.gap_max - constraints.gap_min;
    let mut spacing;
    if span == 0.0 {
        run_grid(&[constraints.gap_min], &mut trace)?;
        spacing = 0.0;
    } else {
        let grid = linear_grid(constraints.gap_min, constraints.gap_max, constraints.grid_points);
        spacing = span / (constraints.grid_points - 1) as f64;
        run_grid(&grid, &mut trace)?;
    }

    let mut best = best_point(&trace).ok_or_else(|| Error::Infeasible {
        constraint: "no feasible design on the gap grid".to_owned(),
    })?;

    if spacing > 0.0 {
        for _ in 0..REFINEMENT_ROUNDS {
            let lo = (best.gap - spacing).max(constraints.gap_min);
            let hi = (best.gap + spacing).min(constraints.gap_max);
            if hi <= lo {
                break;
            }
            let grid = linear_grid(lo, hi, REFINEMENT_POINTS);
            run_grid(&grid, &mut trace)?;
            best = best_point(&trace).expect("trace is nonempty");
            spacing = (hi - lo) / (REFINEMENT_POINTS - 1) as f64;
        }
    }

    let config = StackConfig {
        layers: best.layers,
        disk_diameter: constraints.disk_diameter,
        gap: best.gap,
        layer_pitch: constraints.layer_overhead + best.gap,
        spacer: constraints.spacer,
        mirror: constraints.mirror,
        g: constraints.g,
        reduction_override: None,
        eta_evaluation_gap: constraints.eta_evaluation_gap,
        noise_floor: DEFAULT_NOISE_FLOOR,
        density: DEFAULT_DENSITY,
    };
    Ok(OptimizedStack {
        gap: best.gap,
        layers: best.layers,
        layer_pitch: config.layer_pitch,
        force_total: best.force_total,
        config,
        trace,
        infeasible_points,
    })
}

fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let step = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i == points - 1 {
                hi
            } else {
                lo + i as f64 * step
            }
        })
        .collect()
}

fn best_point(trace: &[TracePoint]) -> Option<TracePoint> {
    let mut best: Option<TracePoint> = None;
    for &point in trace {
        best = Some(match best {
            None => point,
            Some(incumbent) => {
                if point.force_total > incumbent.force_total
                    || (point.force_total == incumbent.force_total && point.gap < incumbent.gap)
                {
                    point
                } else {
                    incumbent
                }
            }
        });
    }
    best
}

#[cfg(test)]
mod tests {
    // Frozen anchors keep all 17 round-trip digits even where 16 parse the same.
    #![allow(clippy::excessive_precision)]

    use super::*;
    use approx::assert_relative_eq;

    fn codata() -> PhysicalConstants {
        PhysicalConstants::codata()
    }

    fn reference_with_override(eta: f64) -> StackConfig {
        let mut config = StackConfig::reference_design();
        config.reduction_override = Some(eta);
        config
    }

    #[test]
    fn reference_design_with_vacuum_gaps_hits_the_frozen_total() {
        let mut config = reference_with_override(0.07);
        config.spacer = SpacerMaterial::vacuum();
        let report = stack_force(&config, &codata()).unwrap();
        assert_relative_eq!(
            report.force_total,
            6.239_395_933_016_717_2e-16,
            max_relative = 1e-13
        );
        assert!(report.detectability.detectable);
        assert_relative_eq!(
            report.detectability.ratio,
            12.478_791_866_033_434,
            max_relative = 1e-13
        );
        assert_eq!(
            report.force_total,
            config.layers as f64 * report.force_per_layer
        );
    }

    #[test]
    fn silica_spacer_weakens_the_total_by_the_cubed_index() {
        let report = stack_force(&reference_with_override(0.07), &codata()).unwrap();
        assert_relative_eq!(
            report.force_total,
            2.004_859_663_272_015_5e-16,
            max_relative = 1e-13
        );
        assert_relative_eq!(report.detectability.ratio, 4.009_719_326_544_031, max_relative = 1e-13);
        assert_eq!(report.optical_gap, 1.46 * 5e-9);
    }

    #[test]
    fn weight_comparison_against_the_frozen_reference() {
        let mut config = reference_with_override(0.07);
        config.spacer = SpacerMaterial::vacuum();
        let report = stack_force(&config, &codata()).unwrap();
        let w = report.weight_comparison;
        assert_relative_eq!(w.stack_weight, 18.485_099_76, max_relative = 1e-9);
        assert_relative_eq!(
            w.force_to_weight_ratio.unwrap(),
            3.375_365_032e-17,
            max_relative = 1e-9
        );
    }

    #[test]
    fn plasma_model_reports_eta_at_both_gaps() {
        let report = stack_force(&StackConfig::reference_design(), &codata()).unwrap();
        match report.eta_source {
            EtaSource::PlasmaModel {
                evaluation_gap,
                at_optical_gap,
                at_physical_gap,
            } => {
                assert_eq!(evaluation_gap, EtaGap::Optical);
                assert_relative_eq!(at_optical_gap, 0.079_574_534_256_238_59, max_relative = 1e-6);
                assert_relative_eq!(at_physical_gap, 0.056_433_933_810_570_75, max_relative = 1e-6);
                assert_eq!(report.eta_used, at_optical_gap);
            }
            other => panic!("expected plasma-model eta, got {other:?}"),
        }
        assert!(report.force_total > 1e-16 && report.force_total < 1e-14);
    }

    #[test]
    fn reports_carry_the_static_signal_caveat_and_direction() {
        let report = stack_force(&reference_with_override(0.07), &codata()).unwrap();
        assert!(report.notes.iter().any(|n| n.contains("static")));
        assert!(report.direction.contains("opposing"));
    }

    #[test]
    fn validation_collects_every_violation() {
        let mut config = StackConfig::reference_design();
        config.gap = 2e-7;
        config.disk_diameter = 0.0;
        config.g = -1.0;
        let err = config.validate().unwrap_err();
        match err {
            Error::InvalidConfig { violations } => {
                assert_eq!(violations.len(), 3);
                assert!(violations.iter().any(|v| v.contains("layer pitch")));
                assert!(violations.iter().any(|v| v.contains("disk_diameter")));
                assert!(violations.iter().any(|v| v.contains("g = ")));
            }
            other => panic!("expected InvalidConfig, got {other}"),
        }
    }

    #[test]
    fn override_outside_unit_interval_is_rejected() {
        assert!(reference_with_override(0.0).validate().is_err());
        assert!(reference_with_override(1.5).validate().is_err());
        assert!(reference_with_override(f64::NAN).validate().is_err());
        assert!(reference_with_override(1.0).validate().is_ok());
    }

    #[test]
    fn layer_budget_reference_counts() {
        assert_eq!(layers_for_thickness(0.1, 95e-9, 5e-9).unwrap(), 1_000_000);
        assert_eq!(layers_for_thickness(0.02, 50e-9, 10e-9).unwrap(), 333_333);
        // Exact integer boundary: the quotient rounds to just below 3 and the
        // nudge must recover the third layer.
        assert_eq!(layers_for_thickness(3e-7, 95e-9, 5e-9).unwrap(), 3);
        assert_eq!(layers_for_thickness(5e-8, 95e-9, 5e-9).unwrap(), 0);
    }

    #[test]
    fn detectability_is_a_strict_comparison() {
        let at_floor = detectability(5e-17, 5e-17).unwrap();
        assert!(!at_floor.detectable);
        assert_eq!(at_floor.ratio, 1.0);
        assert!(detectability(5.1e-17, 5e-17).unwrap().detectable);
        assert!(detectability(-1.0, 5e-17).is_err());
        assert!(detectability(1e-16, 0.0).is_err());
    }

    #[test]
    fn optimizer_prefers_the_smallest_gap_and_never_loses_to_its_trace() {
        let mut constraints = StackConstraints::new(5e-9, 10e-9, 1e-4, 95e-9, 0.01);
        constraints.grid_points = 8;
        let result = optimize_stack(&constraints, &codata()).unwrap();
        assert_eq!(result.gap, 5e-9);
        for point in &result.trace {
            assert!(result.force_total >= point.force_total);
        }
        assert!(result.trace.len() >= constraints.grid_points);
        let report = stack_force(&result.config, &codata()).unwrap();
        assert_eq!(report.force_total.to_bits(), result.force_total.to_bits());
    }

    #[test]
    fn degenerate_gap_range_reproduces_the_reference_design() {
        let constraints = StackConstraints::new(5e-9, 5e-9, 0.1, 95e-9, 0.1);
        let result = optimize_stack(&constraints, &codata()).unwrap();
        assert_eq!(result.gap, 5e-9);
        assert_eq!(result.layers, 1_000_000);
        assert_eq!(result.layer_pitch, 95e-9 + 5e-9);
        assert_eq!(result.trace.len(), 1);
    }

    #[test]
    fn optimizer_runs_are_bit_identical() {
        let mut constraints = StackConstraints::new(5e-9, 10e-9, 1e-4, 95e-9, 0.01);
        constraints.grid_points = 5;
        let a = optimize_stack(&constraints, &codata()).unwrap();
        let b = optimize_stack(&constraints, &codata()).unwrap();
        assert_eq!(a.gap.to_bits(), b.gap.to_bits());
        assert_eq!(a.force_total.to_bits(), b.force_total.to_bits());
        assert_eq!(a.trace.len(), b.trace.len());
    }

    #[test]
    fn impossible_thickness_budgets_are_infeasible() {
        let constraints = StackConstraints::new(5e-9, 10e-9, 5e-8, 95e-9, 0.01);
        assert!(matches!(
            optimize_stack(&constraints, &codata()),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn constraint_validation_collects_violations() {
        let constraints = StackConstraints::new(10e-9, 5e-9, 0.0, 95e-9, 0.01);
        match constraints.validate().unwrap_err() {
            Error::InvalidConfig { violations } => {
                assert!(violations.iter().any(|v| v.contains("gap_min")));
                assert!(violations.iter().any(|v| v.contains("total_thickness")));
            }
            other => panic!("expected InvalidConfig, got {other}"),
        }
    }
}
