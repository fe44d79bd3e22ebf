//! Parameter sweeps: evaluate one command over a numeric grid.
//!
//! The sweep owns six reserved keys (command, parameter, scale, start, stop,
//! points); everything else in the merged configuration is the base the swept
//! command runs with. Each grid value is rendered back to a canonical raw
//! string and pushed through the normal parse-validate-execute path, so a
//! swept run is bit-identical to the same single run typed by hand.

use serde_json::{json, Value};

use casimir_core::constants::PhysicalConstants;

use crate::commands::{self, CommandKind};
use crate::config::{CliError, Kind, RawMap};
use crate::units;

const COMMANDS: &str = "ideal, oracle, gravity, eta, stack, optimize";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scale {
    Linear,
    Log,
}

/// Runs the sweep and returns the envelope plus the process exit code
/// (1 when any point failed, 0 otherwise).
pub fn execute(mut map: RawMap) -> Result<(Value, i32), CliError> {
    let command_raw = map.remove("command");
    let parameter_raw = map.remove("parameter");
    let scale_raw = map.remove("scale");
    let start_raw = map.remove("start");
    let stop_raw = map.remove("stop");
    let points_raw = map.remove("points");

    let mut problems = Vec::new();

    let kind = match command_raw.as_deref() {
        None => {
            problems.push(format!("missing key 'command' (one of: {COMMANDS})"));
            None
        }
        Some(name) => {
            let kind = CommandKind::from_name(name);
            if kind.is_none() {
                problems.push(format!("command '{name}' is not one of: {COMMANDS}"));
            }
            kind
        }
    };

    let parameter = match (parameter_raw.as_deref(), kind) {
        (None, _) => {
            problems.push("missing key 'parameter' (the field to sweep)".to_owned());
            None
        }
        (Some(_), None) => None,
        (Some(name), Some(kind)) => {
            let spec = kind.schema().iter().find(|s| s.name == name);
            match spec {
                Some(spec) if spec.kind.is_numeric() => Some(spec),
                Some(spec) => {
                    problems.push(format!(
                        "parameter '{}' of '{}' is not numeric and cannot be swept",
                        spec.name,
                        kind.name()
                    ));
                    None
                }
                None => {
                    let numeric: Vec<&str> = kind
                        .schema()
                        .iter()
                        .filter(|s| s.kind.is_numeric())
                        .map(|s| s.name)
                        .collect();
                    problems.push(format!(
                        "'{name}' is not a parameter of '{}' (numeric parameters: {})",
                        kind.name(),
                        numeric.join(", ")
                    ));
                    None
                }
            }
        }
    };

    let scale = match scale_raw.as_deref().unwrap_or("linear") {
        "linear" => Scale::Linear,
        "log" => Scale::Log,
        other => {
            problems.push(format!("scale '{other}' is not one of: linear, log"));
            Scale::Linear
        }
    };

    let mut endpoint = |label: &str, raw: &Option<String>| -> Option<f64> {
        let raw = match raw {
            Some(raw) => raw,
            None => {
                problems.push(format!("missing key '{label}' (sweep endpoint)"));
                return None;
            }
        };
        let parsed = match parameter?.kind {
            Kind::Quantity(dimension) => units::parse_quantity(dimension, raw),
            _ => units::parse_dimensionless(raw),
        };
        match parsed {
            Ok(value) => Some(value),
            Err(problem) => {
                problems.push(format!("{label}: {problem}"));
                None
            }
        }
    };
    let start = endpoint("start", &start_raw);
    let stop = endpoint("stop", &stop_raw);

    let points = match points_raw.as_deref() {
        None => {
            problems.push("missing key 'points' (grid size, at least 2)".to_owned());
            None
        }
        Some(raw) => match units::parse_count(raw) {
            Ok(n) if n >= 2 => Some(n),
            Ok(n) => {
                problems.push(format!("points: {n} is too few, a sweep needs at least 2"));
                None
            }
            Err(problem) => {
                problems.push(format!("points: {problem}"));
                None
            }
        },
    };

    if scale == Scale::Log {
        for (label, value) in [("start", start), ("stop", stop)] {
            if let Some(v) = value {
                if v <= 0.0 {
                    problems.push(format!("{label}: a log sweep needs a positive value, got {v}"));
                }
            }
        }
    }

    if !problems.is_empty() {
        return Err(CliError::Invalid(problems));
    }
    let (kind, spec, start, stop, points) = (
        kind.expect("validated"),
        parameter.expect("validated"),
        start.expect("validated"),
        stop.expect("validated"),
        points.expect("validated"),
    );

    let mut rows = Vec::with_capacity(points as usize);
    let mut failed = 0usize;
    let mut first_error = None;
    for value in grid(start, stop, points, scale) {
        let (value, raw) = inject(spec.kind, value);
        let mut point_map = map.clone();
        point_map.insert(spec.name.to_owned(), raw);
        match commands::execute(kind, point_map) {
            Ok(mut envelope) => rows.push(json!({
                "value": value,
                "ok": true,
                "config": envelope["config"].take(),
                "result": envelope["result"].take(),
            })),
            Err(error) => {
                let message = error.to_string();
                if first_error.is_none() {
                    first_error = Some(message.clone());
                }
                failed += 1;
                rows.push(json!({
                    "value": value,
                    "ok": false,
                    "error": message,
                }));
            }
        }
    }

    if failed == rows.len() {
        return Err(CliError::Sweep(format!(
            "all {points} sweep points failed; first error: {}",
            first_error.expect("at least one failure recorded")
        )));
    }

    let config = json!({
        "command": kind.name(),
        "parameter": spec.name,
        "scale": match scale { Scale::Linear => "linear", Scale::Log => "log" },
        "start": start,
        "stop": stop,
        "points": points,
        "base": map,
    });
    let result = json!({
        "rows": rows,
        "failed_points": failed,
    });
    let envelope = commands::envelope("sweep", config, &PhysicalConstants::codata(), result);
    Ok((envelope, i32::from(failed > 0)))
}

/// Evenly spaced grid with exact endpoints.
fn grid(start: f64, stop: f64, points: u64, scale: Scale) -> Vec<f64> {
    let last = points - 1;
    (0..points)
        .map(|i| {
            if i == 0 {
                start
            } else if i == last {
                stop
            } else {
                let t = i as f64 / last as f64;
                match scale {
                    Scale::Linear => start + (stop - start) * t,
                    Scale::Log => (start.ln() + (stop.ln() - start.ln()) * t).exp(),
                }
            }
        })
        .collect()
}

/// Renders a grid value as the raw string the command will parse, returning
/// the value actually run (counts round to the nearest integer).
fn inject(kind: Kind, value: f64) -> (f64, String) {
    match kind {
        Kind::Quantity(dimension) => (value, units::canonical_quantity(dimension, value)),
        Kind::Count => {
            let rounded = value.round().max(0.0) as u64;
            (rounded as f64, rounded.to_string())
        }
        _ => (value, format!("{value:.17e}")),
    }
}
