//! The command set: per-command schema, parameter resolution, evaluation,
//! and the report envelope every run emits.
//!
//! Every emission carries the tool version, the fully resolved configuration
//! in SI units, and the physical constants used, so a stored report is
//! reproducible without the invocation that made it.

use serde::Serialize;
use serde_json::{json, Value};

use casimir_core::constants::PhysicalConstants;
use casimir_core::geometry::CavityGeometry;
use casimir_core::gravity::{self, GravitationalSource};
use casimir_core::ideal;
use casimir_core::mirrors::{self, MirrorMaterial, SpacerMaterial};
use casimir_core::regularize::{self, ModeSumSpec};
use casimir_core::stack::{self, EtaGap, StackConfig, StackConstraints};

use crate::config::{
    defaulted, optional, required, resolve, CliError, Kind, KeySpec, RawMap, ResolvedMap,
};
use crate::units::Dimension;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

const METHODS: &[&str] = &["abel-plana", "exponential-cutoff"];
const ETA_GAPS: &[&str] = &["optical", "physical"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Ideal,
    Oracle,
    Gravity,
    Eta,
    Stack,
    Optimize,
}

impl CommandKind {
    pub const ALL: [CommandKind; 6] = [
        CommandKind::Ideal,
        CommandKind::Oracle,
        CommandKind::Gravity,
        CommandKind::Eta,
        CommandKind::Stack,
        CommandKind::Optimize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Ideal => "ideal",
            CommandKind::Oracle => "oracle",
            CommandKind::Gravity => "gravity",
            CommandKind::Eta => "eta",
            CommandKind::Stack => "stack",
            CommandKind::Optimize => "optimize",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn schema(self) -> &'static [KeySpec] {
        match self {
            CommandKind::Ideal => IDEAL_SCHEMA,
            CommandKind::Oracle => ORACLE_SCHEMA,
            CommandKind::Gravity => GRAVITY_SCHEMA,
            CommandKind::Eta => ETA_SCHEMA,
            CommandKind::Stack => STACK_SCHEMA,
            CommandKind::Optimize => OPTIMIZE_SCHEMA,
        }
    }
}

static IDEAL_SCHEMA: &[KeySpec] = &[
    required("gap", Kind::Quantity(Dimension::Length)),
    optional("area", Kind::Quantity(Dimension::Area)),
    optional("diameter", Kind::Quantity(Dimension::Length)),
    defaulted("spacer-index", Kind::Dimensionless, "1"),
];

static ORACLE_SCHEMA: &[KeySpec] = &[
    defaulted("method", Kind::Choice(METHODS), "abel-plana"),
    optional("tolerance", Kind::Dimensionless),
    defaulted("max-subdivisions", Kind::Count, "100"),
    defaulted("cutoff-values", Kind::DimensionlessList, "0.2,0.1,0.05,0.025"),
    optional("gap", Kind::Quantity(Dimension::Length)),
    optional("area", Kind::Quantity(Dimension::Area)),
    optional("diameter", Kind::Quantity(Dimension::Length)),
    defaulted("spacer-index", Kind::Dimensionless, "1"),
];

static GRAVITY_SCHEMA: &[KeySpec] = &[
    required("gap", Kind::Quantity(Dimension::Length)),
    optional("area", Kind::Quantity(Dimension::Area)),
    optional("diameter", Kind::Quantity(Dimension::Length)),
    defaulted("spacer-index", Kind::Dimensionless, "1"),
    optional("mass", Kind::Quantity(Dimension::Mass)),
    optional("radius", Kind::Quantity(Dimension::Length)),
    optional("g", Kind::Quantity(Dimension::Acceleration)),
];

static ETA_SCHEMA: &[KeySpec] = &[
    required("gap", Kind::Quantity(Dimension::Length)),
    defaulted("plasma-wavelength", Kind::Quantity(Dimension::Length), "100nm"),
];

static STACK_SCHEMA: &[KeySpec] = &[
    optional("layers", Kind::Count),
    optional("total-thickness", Kind::Quantity(Dimension::Length)),
    defaulted("diameter", Kind::Quantity(Dimension::Length), "10cm"),
    defaulted("gap", Kind::Quantity(Dimension::Length), "5nm"),
    defaulted("pitch", Kind::Quantity(Dimension::Length), "100nm"),
    defaulted("spacer-index", Kind::Dimensionless, "1.46"),
    defaulted("plasma-wavelength", Kind::Quantity(Dimension::Length), "100nm"),
    defaulted("g", Kind::Quantity(Dimension::Acceleration), "9.80665m/s2"),
    optional("eta", Kind::Dimensionless),
    defaulted("eta-gap", Kind::Choice(ETA_GAPS), "optical"),
    defaulted("noise-floor", Kind::Quantity(Dimension::Force), "5e-17N"),
    defaulted("density", Kind::Quantity(Dimension::Density), "2400kg/m3"),
];

static OPTIMIZE_SCHEMA: &[KeySpec] = &[
    required("gap-min", Kind::Quantity(Dimension::Length)),
    required("gap-max", Kind::Quantity(Dimension::Length)),
    required("total-thickness", Kind::Quantity(Dimension::Length)),
    required("layer-overhead", Kind::Quantity(Dimension::Length)),
    defaulted("diameter", Kind::Quantity(Dimension::Length), "10cm"),
    defaulted("spacer-index", Kind::Dimensionless, "1.46"),
    defaulted("plasma-wavelength", Kind::Quantity(Dimension::Length), "100nm"),
    defaulted("g", Kind::Quantity(Dimension::Acceleration), "9.80665m/s2"),
    defaulted("eta-gap", Kind::Choice(ETA_GAPS), "optical"),
    defaulted("grid-points", Kind::Count, "1024"),
];

/// Resolves the raw map and runs the command, returning the full envelope
/// as a JSON value.
pub fn execute(kind: CommandKind, map: RawMap) -> Result<Value, CliError> {
    let resolved = resolve(kind.schema(), map)?;
    let constants = PhysicalConstants::codata();
    let (config, result) = match kind {
        CommandKind::Ideal => run_ideal(&resolved, &constants)?,
        CommandKind::Oracle => run_oracle(&resolved, &constants)?,
        CommandKind::Gravity => run_gravity(&resolved, &constants)?,
        CommandKind::Eta => run_eta(&resolved, &constants)?,
        CommandKind::Stack => run_stack(&resolved, &constants)?,
        CommandKind::Optimize => run_optimize(&resolved, &constants)?,
    };
    Ok(envelope(kind.name(), config, &constants, result))
}

pub fn envelope(
    command: &str,
    config: Value,
    constants: &PhysicalConstants,
    result: Value,
) -> Value {
    json!({
        "version": VERSION,
        "command": command,
        "config": config,
        "constants": constants,
        "result": result,
    })
}

/// Echo of the resolved plate geometry, in SI.
#[derive(Serialize, Clone, Copy)]
#[serde(rename_all = "kebab-case")]
struct GeometryEcho {
    gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    area: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diameter: Option<f64>,
    spacer_index: f64,
}

/// Builds the cavity from gap plus exactly one of area or diameter.
fn build_geometry(resolved: &ResolvedMap) -> Result<(CavityGeometry, GeometryEcho), CliError> {
    let gap = resolved
        .number("gap")
        .expect("gap is required by every schema using geometry");
    let area = resolved.number("area");
    let diameter = resolved.number("diameter");
    let spacer_index = resolved.number("spacer-index").expect("defaulted");
    let geometry = match (area, diameter) {
        (Some(area), None) => CavityGeometry::with_spacer(area, gap, spacer_index)?,
        (None, Some(diameter)) => CavityGeometry::disk_with_spacer(diameter, gap, spacer_index)?,
        (None, None) => {
            return Err(CliError::invalid(
                "give the plate size as --area or --diameter",
            ))
        }
        (Some(_), Some(_)) => {
            return Err(CliError::invalid(
                "give either --area or --diameter, not both",
            ))
        }
    };
    let echo = GeometryEcho {
        gap,
        area,
        diameter,
        spacer_index,
    };
    Ok((geometry, echo))
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports contain only finite numbers and strings")
}

fn run_ideal(resolved: &ResolvedMap, k: &PhysicalConstants) -> Result<(Value, Value), CliError> {
    let (geometry, echo) = build_geometry(resolved)?;
    let energy = ideal::casimir_energy(&geometry, k)?;
    let pressure = ideal::casimir_pressure(geometry.optical_gap(), k)?;
    let force = ideal::casimir_force_magnitude(&geometry, k)?;
    let frequency = ideal::fundamental_frequency(geometry.optical_gap(), k)?;
    let result = json!({
        "geometry": geometry,
        "energy": energy,
        "pressure": pressure,
        "force_magnitude": force,
        "force_direction": "attractive",
        "fundamental_frequency": frequency,
    });
    Ok((to_value(echo), result))
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct OracleEcho<'a> {
    method: &'a str,
    tolerance: f64,
    max_subdivisions: usize,
    cutoff_values: &'a [f64],
    #[serde(flatten)]
    geometry: Option<GeometryEcho>,
}

fn run_oracle(resolved: &ResolvedMap, k: &PhysicalConstants) -> Result<(Value, Value), CliError> {
    let method = resolved.choice("method").expect("defaulted");
    let mut spec = match method {
        "abel-plana" => ModeSumSpec::abel_plana(),
        _ => ModeSumSpec::exponential_cutoff(),
    };
    if let Some(tolerance) = resolved.number("tolerance") {
        spec.tolerance = tolerance;
    }
    spec.max_subdivisions = resolved.count("max-subdivisions").expect("defaulted") as usize;
    spec.cutoff_values = resolved.list("cutoff-values").expect("defaulted").to_vec();

    let wants_energy = resolved.number("gap").is_some()
        || resolved.number("area").is_some()
        || resolved.number("diameter").is_some();
    let (geometry, regularization, energy_part) = if wants_energy {
        if resolved.number("gap").is_none() {
            return Err(CliError::invalid(
                "the cavity energy needs --gap together with --area or --diameter",
            ));
        }
        let (geometry, echo) = build_geometry(resolved)?;
        let oracle = regularize::oracle_energy(&spec, &geometry, k)?;
        let closed_form = ideal::casimir_energy(&geometry, k)?;
        let difference = oracle.energy - closed_form;
        let part = json!({
            "oracle": oracle.energy,
            "error_bound": oracle.error_bound,
            "closed_form": closed_form,
            "difference": difference,
            "within_error_bound": difference.abs() <= oracle.error_bound,
        });
        (Some(echo), oracle.regularization, Some(part))
    } else {
        (None, regularize::regularized_mode_sum(&spec)?, None)
    };

    let echo = OracleEcho {
        method,
        tolerance: spec.tolerance,
        max_subdivisions: spec.max_subdivisions,
        cutoff_values: &spec.cutoff_values,
        geometry,
    };
    let mut result = json!({ "regularization": regularization });
    if let Some(part) = energy_part {
        result["energy"] = part;
    }
    Ok((to_value(echo), result))
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct GravityEcho {
    #[serde(flatten)]
    geometry: GeometryEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    mass: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<f64>,
}

fn run_gravity(resolved: &ResolvedMap, k: &PhysicalConstants) -> Result<(Value, Value), CliError> {
    let (geometry, geometry_echo) = build_geometry(resolved)?;
    let mass = resolved.number("mass");
    let radius = resolved.number("radius");
    let g = resolved.number("g");

    let mut problems = Vec::new();
    if mass.is_some() != radius.is_some() {
        problems.push("mass and radius must be given together".to_owned());
    }
    let has_source = mass.is_some() && radius.is_some();
    if has_source == g.is_some() {
        problems.push(
            "describe the field either with --mass and --radius, or with --g, not both and not neither"
                .to_owned(),
        );
    }
    if !problems.is_empty() {
        return Err(CliError::Invalid(problems));
    }

    let echo = GravityEcho {
        geometry: geometry_echo,
        mass,
        radius,
        g,
    };

    let result = if has_source {
        let source = GravitationalSource::new(mass.unwrap(), radius.unwrap(), k)?;
        let flat = ideal::casimir_energy(&geometry, k)?;
        let redshifted = gravity::redshifted_energy(&geometry, &source, k)?;
        let exact = gravity::force_exact(&geometry, &source, k)?;
        let parts = gravity::force_as_potential_difference(&geometry, source.local_gravity(), k)?;
        json!({
            "source": {
                "mass": source.mass(),
                "radius": source.radius(),
                "alpha": source.alpha(),
                "alpha_over_radius": source.alpha() / source.radius(),
                "metric_factor": source.metric_factor(),
                "local_gravity": source.local_gravity(),
                "weak_field_valid": source.weak_field_valid(),
            },
            "flat_energy": flat,
            "redshifted_energy": redshifted,
            "force_exact": exact,
            "force_weak_field": parts.force,
            "weak_field_relative_difference": (parts.force - exact) / exact,
            "factorization": parts,
            "force_direction": stack::FORCE_DIRECTION,
        })
    } else {
        let parts = gravity::force_as_potential_difference(&geometry, g.unwrap(), k)?;
        json!({
            "g": g.unwrap(),
            "force_weak_field": parts.force,
            "factorization": parts,
            "force_direction": stack::FORCE_DIRECTION,
        })
    };
    Ok((to_value(echo), result))
}

fn run_eta(resolved: &ResolvedMap, k: &PhysicalConstants) -> Result<(Value, Value), CliError> {
    let gap = resolved.number("gap").expect("required");
    let plasma_wavelength = resolved.number("plasma-wavelength").expect("defaulted");
    let mirror = MirrorMaterial::new(plasma_wavelength)?;
    let pressure_reduction = mirrors::reduction_factor(gap, &mirror)?;
    let energy_reduction = mirrors::reduction_factor_energy(gap, &mirror)?;
    let lifshitz = mirrors::lifshitz_pressure(gap, &mirror, k)?;
    let ideal_pressure = ideal::casimir_pressure(gap, k)?;
    let config = json!({
        "gap": gap,
        "plasma-wavelength": plasma_wavelength,
    });
    let result = json!({
        "gap": gap,
        "plasma_wavelength": plasma_wavelength,
        "gap_over_plasma_wavelength": gap / plasma_wavelength,
        "eta": pressure_reduction.eta,
        "pressure_reduction": pressure_reduction,
        "energy_reduction": energy_reduction,
        "lifshitz_pressure": lifshitz,
        "ideal_pressure": ideal_pressure,
    });
    Ok((config, result))
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct StackEcho {
    layers: u64,
    total_thickness: f64,
    diameter: f64,
    gap: f64,
    pitch: f64,
    spacer_index: f64,
    plasma_wavelength: f64,
    g: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<f64>,
    eta_gap: &'static str,
    noise_floor: f64,
    density: f64,
}

/// Resolves the layer count from an explicit count, a thickness budget, or
/// the million-layer default, rejecting inconsistent combinations.
fn resolve_layers(
    layers: Option<u64>,
    total_thickness: Option<f64>,
    gap: f64,
    pitch: f64,
) -> Result<u64, CliError> {
    if total_thickness.is_some() && pitch <= gap {
        return Err(CliError::invalid(format!(
            "pitch {pitch:e} m must exceed the gap {gap:e} m to derive a layer count"
        )));
    }
    match (layers, total_thickness) {
        (Some(layers), None) => Ok(layers),
        (None, Some(total)) => Ok(stack::layers_for_thickness(total, pitch - gap, gap)?),
        (Some(layers), Some(total)) => {
            let implied = stack::layers_for_thickness(total, pitch - gap, gap)?;
            if implied == layers {
                Ok(layers)
            } else {
                Err(CliError::invalid(format!(
                    "layers {layers} disagrees with total-thickness {total:e} m: \
                     {implied} layers of pitch {pitch:e} m fit that budget"
                )))
            }
        }
        (None, None) => Ok(1_000_000),
    }
}

fn eta_gap_choice(resolved: &ResolvedMap) -> (EtaGap, &'static str) {
    match resolved.choice("eta-gap").expect("defaulted") {
        "physical" => (EtaGap::Physical, "physical"),
        _ => (EtaGap::Optical, "optical"),
    }
}

fn run_stack(resolved: &ResolvedMap, k: &PhysicalConstants) -> Result<(Value, Value), CliError> {
    let gap = resolved.number("gap").expect("defaulted");
    let pitch = resolved.number("pitch").expect("defaulted");
    let layers = resolve_layers(
        resolved.count("layers"),
        resolved.number("total-thickness"),
        gap,
        pitch,
    )?;
    let (eta_gap, eta_gap_name) = eta_gap_choice(resolved);
    let config = StackConfig {
        layers,
        disk_diameter: resolved.number("diameter").expect("defaulted"),
        gap,
        layer_pitch: pitch,
        spacer: SpacerMaterial::new(resolved.number("spacer-index").expect("defaulted"))?,
        mirror: MirrorMaterial::new(resolved.number("plasma-wavelength").expect("defaulted"))?,
        g: resolved.number("g").expect("defaulted"),
        reduction_override: resolved.number("eta"),
        eta_evaluation_gap: eta_gap,
        noise_floor: resolved.number("noise-floor").expect("defaulted"),
        density: resolved.number("density").expect("defaulted"),
    };
    let report = stack::stack_force(&config, k)?;
    let echo = StackEcho {
        layers,
        total_thickness: config.total_thickness(),
        diameter: config.disk_diameter,
        gap,
        pitch,
        spacer_index: config.spacer.refractive_index(),
        plasma_wavelength: config.mirror.plasma_wavelength(),
        g: config.g,
        eta: config.reduction_override,
        eta_gap: eta_gap_name,
        noise_floor: config.noise_floor,
        density: config.density,
    };
    Ok((to_value(echo), to_value(report)))
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct OptimizeEcho {
    gap_min: f64,
    gap_max: f64,
    total_thickness: f64,
    layer_overhead: f64,
    diameter: f64,
    spacer_index: f64,
    plasma_wavelength: f64,
    g: f64,
    eta_gap: &'static str,
    grid_points: u64,
}

fn run_optimize(resolved: &ResolvedMap, k: &PhysicalConstants) -> Result<(Value, Value), CliError> {
    let (eta_gap, eta_gap_name) = eta_gap_choice(resolved);
    let grid_points = resolved.count("grid-points").expect("defaulted");
    let constraints = StackConstraints {
        gap_min: resolved.number("gap-min").expect("required"),
        gap_max: resolved.number("gap-max").expect("required"),
        total_thickness: resolved.number("total-thickness").expect("required"),
        layer_overhead: resolved.number("layer-overhead").expect("required"),
        disk_diameter: resolved.number("diameter").expect("defaulted"),
        spacer: SpacerMaterial::new(resolved.number("spacer-index").expect("defaulted"))?,
        mirror: MirrorMaterial::new(resolved.number("plasma-wavelength").expect("defaulted"))?,
        g: resolved.number("g").expect("defaulted"),
        eta_evaluation_gap: eta_gap,
        grid_points: grid_points as usize,
    };
    let optimized = stack::optimize_stack(&constraints, k)?;
    let report = stack::stack_force(&optimized.config, k)?;
    let echo = OptimizeEcho {
        gap_min: constraints.gap_min,
        gap_max: constraints.gap_max,
        total_thickness: constraints.total_thickness,
        layer_overhead: constraints.layer_overhead,
        diameter: constraints.disk_diameter,
        spacer_index: constraints.spacer.refractive_index(),
        plasma_wavelength: constraints.mirror.plasma_wavelength(),
        g: constraints.g,
        eta_gap: eta_gap_name,
        grid_points,
    };
    let mut result = to_value(&optimized);
    result["report"] = to_value(&report);
    Ok((to_value(echo), result))
}
