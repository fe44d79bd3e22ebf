//! Configuration ingestion: an optional JSON file overlaid by command-line
//! flags, validated against a per-command schema.
//!
//! Both sources funnel into one map of raw strings before any parsing, so
//! precedence ("flags win") is decided once and every value goes through the
//! identical unit-checked path. Validation is aggregated: the user sees every
//! problem in one message, not one per run.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::units::{self, Dimension};

/// Raw key -> unparsed value, after file/flag merging.
pub type RawMap = BTreeMap<String, String>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("configuration is invalid:\n{}", problems_list(.0))]
    Invalid(Vec<String>),
    #[error(transparent)]
    Compute(#[from] casimir_core::Error),
    #[error("{0}")]
    Sweep(String),
}

fn problems_list(problems: &[String]) -> String {
    problems
        .iter()
        .map(|p| format!("  - {p}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl CliError {
    pub fn invalid(problem: impl Into<String>) -> Self {
        CliError::Invalid(vec![problem.into()])
    }
}

/// Reads a config file: a flat JSON object. Dimensioned values must be
/// strings with unit suffixes; bare JSON numbers are passed through and later
/// rejected for dimensioned keys by the same rule as on the command line.
pub fn load_file(path: &Path) -> Result<RawMap, CliError> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::invalid(format!("{}: not valid JSON: {e}", path.display())))?;
    let serde_json::Value::Object(object) = value else {
        return Err(CliError::invalid(format!(
            "{}: config must be a JSON object of key/value pairs",
            path.display()
        )));
    };
    let mut map = RawMap::new();
    let mut problems = Vec::new();
    for (key, value) in object {
        match value {
            serde_json::Value::String(s) => {
                map.insert(key, s);
            }
            serde_json::Value::Number(n) => {
                map.insert(key, n.to_string());
            }
            serde_json::Value::Array(items) => {
                // Lists (e.g. cutoff-values) may be written as JSON arrays.
                let mut parts = Vec::with_capacity(items.len());
                for item in &items {
                    match item {
                        serde_json::Value::Number(n) => parts.push(n.to_string()),
                        serde_json::Value::String(s) => parts.push(s.clone()),
                        other => {
                            problems.push(format!("{key}: unsupported array element {other}"));
                        }
                    }
                }
                map.insert(key, parts.join(","));
            }
            other => problems.push(format!(
                "{key}: unsupported JSON value {other} (use strings or numbers)"
            )),
        }
    }
    if problems.is_empty() {
        Ok(map)
    } else {
        Err(CliError::Invalid(problems))
    }
}

/// Overlays non-empty flag values; flags always beat file values.
pub fn overlay_flags<'a, I>(map: &mut RawMap, flags: I)
where
    I: IntoIterator<Item = (&'static str, Option<&'a String>)>,
{
    for (key, value) in flags {
        if let Some(value) = value {
            map.insert(key.to_owned(), value.clone());
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Quantity(Dimension),
    Dimensionless,
    Count,
    Choice(&'static [&'static str]),
    /// Comma-separated dimensionless numbers.
    DimensionlessList,
}

impl Kind {
    /// Whether a parameter of this kind can be swept over a numeric grid.
    pub fn is_numeric(self) -> bool {
        matches!(self, Kind::Quantity(_) | Kind::Dimensionless | Kind::Count)
    }
}

pub struct KeySpec {
    pub name: &'static str,
    pub kind: Kind,
    pub required: bool,
    /// Raw default, parsed through the same path as user input.
    pub default: Option<&'static str>,
}

pub const fn required(name: &'static str, kind: Kind) -> KeySpec {
    KeySpec {
        name,
        kind,
        required: true,
        default: None,
    }
}

pub const fn optional(name: &'static str, kind: Kind) -> KeySpec {
    KeySpec {
        name,
        kind,
        required: false,
        default: None,
    }
}

pub const fn defaulted(name: &'static str, kind: Kind, default: &'static str) -> KeySpec {
    KeySpec {
        name,
        kind,
        required: false,
        default: Some(default),
    }
}

/// One parsed value.
#[derive(Debug, Clone, PartialEq)]
pub enum Resolved {
    Number(f64),
    Count(u64),
    Choice(&'static str),
    List(Vec<f64>),
}

/// Parsed configuration for one command: schema-checked values by key.
pub struct ResolvedMap {
    values: BTreeMap<&'static str, Resolved>,
}

impl ResolvedMap {
    pub fn number(&self, key: &str) -> Option<f64> {
        match self.values.get(key) {
            Some(Resolved::Number(v)) => Some(*v),
            None => None,
            Some(other) => panic!("{key} resolved to {other:?}, not a number"),
        }
    }

    pub fn count(&self, key: &str) -> Option<u64> {
        match self.values.get(key) {
            Some(Resolved::Count(v)) => Some(*v),
            None => None,
            Some(other) => panic!("{key} resolved to {other:?}, not a count"),
        }
    }

    pub fn choice(&self, key: &str) -> Option<&'static str> {
        match self.values.get(key) {
            Some(Resolved::Choice(v)) => Some(*v),
            None => None,
            Some(other) => panic!("{key} resolved to {other:?}, not a choice"),
        }
    }

    pub fn list(&self, key: &str) -> Option<&[f64]> {
        match self.values.get(key) {
            Some(Resolved::List(v)) => Some(v),
            None => None,
            Some(other) => panic!("{key} resolved to {other:?}, not a list"),
        }
    }
}

fn parse_value(kind: Kind, raw: &str) -> Result<Resolved, String> {
    match kind {
        Kind::Quantity(dimension) => units::parse_quantity(dimension, raw).map(Resolved::Number),
        Kind::Dimensionless => units::parse_dimensionless(raw).map(Resolved::Number),
        Kind::Count => units::parse_count(raw).map(Resolved::Count),
        Kind::Choice(options) => options
            .iter()
            .find(|o| **o == raw.trim())
            .map(|o| Resolved::Choice(o))
            .ok_or_else(|| format!("'{raw}' is not one of: {}", options.join(", "))),
        Kind::DimensionlessList => {
            let mut values = Vec::new();
            for part in raw.split(',') {
                values.push(units::parse_dimensionless(part)?);
            }
            Ok(Resolved::List(values))
        }
    }
}

/// Checks a merged raw map against a schema, consuming it. Unknown keys,
/// missing required keys, and malformed values are all reported together.
pub fn resolve(schema: &[KeySpec], mut map: RawMap) -> Result<ResolvedMap, CliError> {
    let mut values = BTreeMap::new();
    let mut problems = Vec::new();
    for spec in schema {
        let raw = map.remove(spec.name);
        let raw = match (&raw, spec.default) {
            (Some(r), _) => Some(r.as_str()),
            (None, Some(d)) => Some(d),
            (None, None) => None,
        };
        match raw {
            Some(raw) => match parse_value(spec.kind, raw) {
                Ok(parsed) => {
                    values.insert(spec.name, parsed);
                }
                Err(problem) => problems.push(format!("{}: {problem}", spec.name)),
            },
            None => {
                if spec.required {
                    problems.push(format!("{}: required but not given", spec.name));
                }
            }
        }
    }
    for unknown in map.keys() {
        let known = schema
            .iter()
            .map(|s| s.name)
            .collect::<Vec<_>>()
            .join(", ");
        problems.push(format!("{unknown}: unknown key (known keys: {known})"));
    }
    if problems.is_empty() {
        Ok(ResolvedMap { values })
    } else {
        Err(CliError::Invalid(problems))
    }
}

impl fmt::Debug for ResolvedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.values.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo_schema() -> Vec<KeySpec> {
        vec![
            required("gap", Kind::Quantity(Dimension::Length)),
            defaulted("spacer-index", Kind::Dimensionless, "1"),
            optional("layers", Kind::Count),
            defaulted(
                "method",
                Kind::Choice(&["abel-plana", "exponential-cutoff"]),
                "abel-plana",
            ),
            optional("cutoff-values", Kind::DimensionlessList),
        ]
    }

    #[test]
    fn defaults_apply_and_values_parse() {
        let mut map = RawMap::new();
        map.insert("gap".into(), "5nm".into());
        map.insert("layers".into(), "1e6".into());
        let resolved = resolve(&demo_schema(), map).unwrap();
        assert_eq!(resolved.number("gap"), Some(5e-9));
        assert_eq!(resolved.number("spacer-index"), Some(1.0));
        assert_eq!(resolved.count("layers"), Some(1_000_000));
        assert_eq!(resolved.choice("method"), Some("abel-plana"));
        assert_eq!(resolved.list("cutoff-values"), None);
    }

    #[test]
    fn all_problems_are_reported_at_once() {
        let mut map = RawMap::new();
        map.insert("spacer-index".into(), "thick".into());
        map.insert("layers".into(), "2.5".into());
        map.insert("mystery".into(), "1".into());
        let err = resolve(&demo_schema(), map).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("gap: required"), "{text}");
        assert!(text.contains("spacer-index"), "{text}");
        assert!(text.contains("layers"), "{text}");
        assert!(text.contains("mystery: unknown key"), "{text}");
    }

    #[test]
    fn flags_override_file_values() {
        let mut map = RawMap::new();
        map.insert("gap".into(), "6.5nm".into());
        let flag_value = "5nm".to_owned();
        overlay_flags(&mut map, [("gap", Some(&flag_value)), ("layers", None)]);
        let resolved = resolve(&demo_schema(), map).unwrap();
        assert_eq!(resolved.number("gap"), Some(5e-9));
    }

    #[test]
    fn comma_lists_parse() {
        let mut map = RawMap::new();
        map.insert("gap".into(), "1nm".into());
        map.insert("cutoff-values".into(), "0.2,0.1,0.05".into());
        let resolved = resolve(&demo_schema(), map).unwrap();
        assert_eq!(resolved.list("cutoff-values").unwrap(), &[0.2, 0.1, 0.05]);
    }
}
