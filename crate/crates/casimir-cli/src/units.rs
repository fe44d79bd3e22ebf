//! Unit-suffixed quantity parsing.
//!
//! Every dimensioned input must carry an explicit unit suffix ("5nm", not
//! "5"); bare numbers are accepted only where the value is dimensionless or
//! a count. Suffixes are case-sensitive (mN and MN would not be the same
//! force) and the longest matching suffix wins, so "5cm" is centimeters, not
//! "5c" meters. The micro prefix is accepted as "u", "µ" (micro sign), or
//! "μ" (Greek mu); squared and cubed units accept both "m2" and "m^2".

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Area,
    Frequency,
    Force,
    Mass,
    Acceleration,
    Density,
}

/// (suffix, factor to SI). The first entry of each table is the canonical
/// SI unit used when the program itself formats a quantity.
const LENGTH: &[(&str, f64)] = &[
    ("m", 1.0),
    ("km", 1e3),
    ("cm", 1e-2),
    ("mm", 1e-3),
    ("um", 1e-6),
    ("µm", 1e-6),
    ("μm", 1e-6),
    ("nm", 1e-9),
    ("pm", 1e-12),
];

const AREA: &[(&str, f64)] = &[
    ("m2", 1.0),
    ("m^2", 1.0),
    ("cm2", 1e-4),
    ("cm^2", 1e-4),
    ("mm2", 1e-6),
    ("mm^2", 1e-6),
    ("um2", 1e-12),
    ("um^2", 1e-12),
    ("µm2", 1e-12),
    ("µm^2", 1e-12),
    ("μm2", 1e-12),
    ("μm^2", 1e-12),
    ("nm2", 1e-18),
    ("nm^2", 1e-18),
];

const FREQUENCY: &[(&str, f64)] = &[
    ("Hz", 1.0),
    ("kHz", 1e3),
    ("MHz", 1e6),
    ("GHz", 1e9),
    ("THz", 1e12),
    ("PHz", 1e15),
];

const FORCE: &[(&str, f64)] = &[
    ("N", 1.0),
    ("mN", 1e-3),
    ("uN", 1e-6),
    ("µN", 1e-6),
    ("μN", 1e-6),
    ("nN", 1e-9),
    ("pN", 1e-12),
    ("fN", 1e-15),
    ("aN", 1e-18),
];

const MASS: &[(&str, f64)] = &[
    ("kg", 1.0),
    ("g", 1e-3),
    ("mg", 1e-6),
    ("ug", 1e-9),
    ("µg", 1e-9),
    ("μg", 1e-9),
];

const ACCELERATION: &[(&str, f64)] = &[("m/s2", 1.0), ("m/s^2", 1.0)];

const DENSITY: &[(&str, f64)] = &[
    ("kg/m3", 1.0),
    ("kg/m^3", 1.0),
    ("g/cm3", 1e3),
    ("g/cm^3", 1e3),
];

impl Dimension {
    pub fn units(self) -> &'static [(&'static str, f64)] {
        match self {
            Dimension::Length => LENGTH,
            Dimension::Area => AREA,
            Dimension::Frequency => FREQUENCY,
            Dimension::Force => FORCE,
            Dimension::Mass => MASS,
            Dimension::Acceleration => ACCELERATION,
            Dimension::Density => DENSITY,
        }
    }

    pub fn canonical_suffix(self) -> &'static str {
        self.units()[0].0
    }

    fn describe(self) -> String {
        let mut s = String::new();
        for (i, (suffix, _)) in self.units().iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            s.push_str(suffix);
        }
        s
    }
}

pub const ALL_DIMENSIONS: [Dimension; 7] = [
    Dimension::Length,
    Dimension::Area,
    Dimension::Frequency,
    Dimension::Force,
    Dimension::Mass,
    Dimension::Acceleration,
    Dimension::Density,
];

/// Parses "5nm" style input into SI units.
pub fn parse_quantity(dimension: Dimension, raw: &str) -> Result<f64, String> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Err("empty value".to_owned());
    }
    let mut best: Option<(&str, f64)> = None;
    for &(suffix, factor) in dimension.units() {
        if raw.ends_with(suffix) && best.map_or(true, |(b, _)| suffix.len() > b.len()) {
            best = Some((suffix, factor));
        }
    }
    let Some((suffix, factor)) = best else {
        if raw.parse::<f64>().is_ok() {
            return Err(format!(
                "'{raw}' needs an explicit unit, e.g. '{raw}{}' (accepted: {})",
                dimension.canonical_suffix(),
                dimension.describe()
            ));
        }
        return Err(format!(
            "'{raw}' has no recognized unit suffix (accepted: {})",
            dimension.describe()
        ));
    };
    let number = raw[..raw.len() - suffix.len()].trim();
    let value: f64 = number
        .parse()
        .map_err(|_| format!("'{number}' is not a number (in '{raw}')"))?;
    let si = value * factor;
    if !si.is_finite() {
        return Err(format!("'{raw}' is not finite"));
    }
    Ok(si)
}

/// Parses a bare dimensionless number; unit suffixes are rejected.
pub fn parse_dimensionless(raw: &str) -> Result<f64, String> {
    let raw = raw.trim();
    let value: f64 = raw
        .parse()
        .map_err(|_| format!("'{raw}' is not a bare number (dimensionless values take no unit)"))?;
    if !value.is_finite() {
        return Err(format!("'{raw}' is not finite"));
    }
    Ok(value)
}

/// Parses a non-negative integer count; accepts scientific notation such as
/// "1e6" as long as the value is a whole number.
pub fn parse_count(raw: &str) -> Result<u64, String> {
    let raw = raw.trim();
    if let Ok(n) = raw.parse::<u64>() {
        return Ok(n);
    }
    let value: f64 = raw
        .parse()
        .map_err(|_| format!("'{raw}' is not a count"))?;
    if !value.is_finite() || value < 0.0 || value.fract() != 0.0 {
        return Err(format!("'{raw}' is not a whole non-negative count"));
    }
    if value > u64::MAX as f64 {
        return Err(format!("'{raw}' exceeds the supported count range"));
    }
    Ok(value as u64)
}

/// Formats an SI value in a form `parse_quantity` reads back exactly: full
/// precision plus the canonical suffix. Used when the program generates its
/// own parameter values (sweeps).
pub fn canonical_quantity(dimension: Dimension, si_value: f64) -> String {
    let mut s = String::new();
    write!(s, "{:.17e}{}", si_value, dimension.canonical_suffix()).expect("write to string");
    s
}
