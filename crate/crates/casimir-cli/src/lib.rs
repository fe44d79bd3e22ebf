//! Command-line front end for the cavity library.
//!
//! Every value-carrying flag takes a raw string so dimensioned inputs keep
//! their unit suffixes ("5nm", "10cm", "5e-17N"). Parsing and validation
//! happen in one place ([`config::resolve`]) after merging the optional
//! config file with the flags, flags winning. Reports are emitted as a JSON
//! envelope (or CSV/table flattenings of it) carrying the tool version, the
//! resolved configuration, and the physical constants used.
//!
//! Exit codes: 0 success, 1 invalid configuration or failed computation
//! (including a sweep with any failed point), 2 command-line usage error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

mod commands;
mod config;
mod output;
mod sweep;
pub mod units;

use commands::CommandKind;
use config::{CliError, RawMap};
use output::Format;

#[derive(Parser)]
#[command(
    name = "casimir",
    version,
    about = "Vacuum forces on rigid layered cavities in a gravitational field",
    after_help = "Dimensioned values need a unit suffix: --gap 5nm, --area 1m2, \
                  --noise-floor 5e-17N. Run a subcommand with --help for its parameters."
)]
struct Cli {
    /// Flat JSON object of parameters for the subcommand; flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Perfect-mirror cavity: energy, pressure, force, lowest resonance.
    Ideal(IdealArgs),
    /// Regularized vacuum mode sum, optionally scaled to a cavity energy.
    Oracle(OracleArgs),
    /// Red-shifted cavity energy and the weak-field force on it.
    Gravity(GravityArgs),
    /// Finite-conductivity reduction factor for a real mirror pair.
    Eta(EtaArgs),
    /// Net outward force on a multilayer cavity stack.
    Stack(StackArgs),
    /// Best gap for a stack under fabrication constraints.
    Optimize(OptimizeArgs),
    /// Evaluate a subcommand over a numeric parameter grid.
    Sweep(SweepArgs),
}

#[derive(Args, Default)]
struct IdealArgs {
    /// Plate separation, e.g. 5nm.
    #[arg(long)]
    gap: Option<String>,
    /// Plate area, e.g. 1m2 (give either this or --diameter).
    #[arg(long)]
    area: Option<String>,
    /// Disk diameter, e.g. 10cm (give either this or --area).
    #[arg(long)]
    diameter: Option<String>,
    /// Refractive index of the gap material [default: 1, vacuum].
    #[arg(long)]
    spacer_index: Option<String>,
}

impl IdealArgs {
    fn pairs(&self) -> Vec<(&'static str, Option<&String>)> {
        vec![
            ("gap", self.gap.as_ref()),
            ("area", self.area.as_ref()),
            ("diameter", self.diameter.as_ref()),
            ("spacer-index", self.spacer_index.as_ref()),
        ]
    }
}

#[derive(Args, Default)]
struct OracleArgs {
    /// Regularization method: abel-plana or exponential-cutoff.
    #[arg(long)]
    method: Option<String>,
    /// Relative accuracy target [default: the method's own].
    #[arg(long)]
    tolerance: Option<String>,
    /// Adaptive quadrature subdivision budget [default: 100].
    #[arg(long)]
    max_subdivisions: Option<String>,
    /// Damping parameters for the cutoff method, comma-separated,
    /// strictly decreasing in (0,1) [default: 0.2,0.1,0.05,0.025].
    #[arg(long)]
    cutoff_values: Option<String>,
    /// Plate separation; with a plate size, also report the cavity energy.
    #[arg(long)]
    gap: Option<String>,
    /// Plate area, e.g. 1m2 (give either this or --diameter).
    #[arg(long)]
    area: Option<String>,
    /// Disk diameter, e.g. 10cm (give either this or --area).
    #[arg(long)]
    diameter: Option<String>,
    /// Refractive index of the gap material [default: 1, vacuum].
    #[arg(long)]
    spacer_index: Option<String>,
}

impl OracleArgs {
    fn pairs(&self) -> Vec<(&'static str, Option<&String>)> {
        vec![
            ("method", self.method.as_ref()),
            ("tolerance", self.tolerance.as_ref()),
            ("max-subdivisions", self.max_subdivisions.as_ref()),
            ("cutoff-values", self.cutoff_values.as_ref()),
            ("gap", self.gap.as_ref()),
            ("area", self.area.as_ref()),
            ("diameter", self.diameter.as_ref()),
            ("spacer-index", self.spacer_index.as_ref()),
        ]
    }
}

#[derive(Args, Default)]
struct GravityArgs {
    /// Plate separation, e.g. 5nm.
    #[arg(long)]
    gap: Option<String>,
    /// Plate area, e.g. 1m2 (give either this or --diameter).
    #[arg(long)]
    area: Option<String>,
    /// Disk diameter, e.g. 10cm (give either this or --area).
    #[arg(long)]
    diameter: Option<String>,
    /// Refractive index of the gap material [default: 1, vacuum].
    #[arg(long)]
    spacer_index: Option<String>,
    /// Mass of the gravitating body, e.g. 5.972e24kg (with --radius).
    #[arg(long)]
    mass: Option<String>,
    /// Distance from the body's center, e.g. 6371km (with --mass).
    #[arg(long)]
    radius: Option<String>,
    /// Local gravitational acceleration, e.g. 9.80665m/s2
    /// (instead of --mass/--radius).
    #[arg(long)]
    g: Option<String>,
}

impl GravityArgs {
    fn pairs(&self) -> Vec<(&'static str, Option<&String>)> {
        vec![
            ("gap", self.gap.as_ref()),
            ("area", self.area.as_ref()),
            ("diameter", self.diameter.as_ref()),
            ("spacer-index", self.spacer_index.as_ref()),
            ("mass", self.mass.as_ref()),
            ("radius", self.radius.as_ref()),
            ("g", self.g.as_ref()),
        ]
    }
}

#[derive(Args, Default)]
struct EtaArgs {
    /// Physical plate separation, e.g. 6.5nm.
    #[arg(long)]
    gap: Option<String>,
    /// Mirror plasma wavelength [default: 100nm, aluminum].
    #[arg(long)]
    plasma_wavelength: Option<String>,
}

impl EtaArgs {
    fn pairs(&self) -> Vec<(&'static str, Option<&String>)> {
        vec![
            ("gap", self.gap.as_ref()),
            ("plasma-wavelength", self.plasma_wavelength.as_ref()),
        ]
    }
}

#[derive(Args, Default)]
struct StackArgs {
    /// Number of cavities [default: 1000000, or derived from
    /// --total-thickness].
    #[arg(long)]
    layers: Option<String>,
    /// Stack height budget; an alternative to --layers.
    #[arg(long)]
    total_thickness: Option<String>,
    /// Disk diameter [default: 10cm].
    #[arg(long)]
    diameter: Option<String>,
    /// Vacuum gap per cavity [default: 5nm].
    #[arg(long)]
    gap: Option<String>,
    /// Layer pitch, gap plus structural overhead [default: 100nm].
    #[arg(long)]
    pitch: Option<String>,
    /// Spacer refractive index [default: 1.46, silica].
    #[arg(long)]
    spacer_index: Option<String>,
    /// Mirror plasma wavelength [default: 100nm, aluminum].
    #[arg(long)]
    plasma_wavelength: Option<String>,
    /// Local gravitational acceleration [default: 9.80665m/s2].
    #[arg(long)]
    g: Option<String>,
    /// Override the conductivity reduction factor with a fixed value.
    #[arg(long)]
    eta: Option<String>,
    /// Gap the reduction factor is evaluated at: optical or physical
    /// [default: optical].
    #[arg(long)]
    eta_gap: Option<String>,
    /// Force sensitivity the total is compared against [default: 5e-17N].
    #[arg(long)]
    noise_floor: Option<String>,
    /// Mean stack density for the weight comparison [default: 2400kg/m3].
    #[arg(long)]
    density: Option<String>,
}

impl StackArgs {
    fn pairs(&self) -> Vec<(&'static str, Option<&String>)> {
        vec![
            ("layers", self.layers.as_ref()),
            ("total-thickness", self.total_thickness.as_ref()),
            ("diameter", self.diameter.as_ref()),
            ("gap", self.gap.as_ref()),
            ("pitch", self.pitch.as_ref()),
            ("spacer-index", self.spacer_index.as_ref()),
            ("plasma-wavelength", self.plasma_wavelength.as_ref()),
            ("g", self.g.as_ref()),
            ("eta", self.eta.as_ref()),
            ("eta-gap", self.eta_gap.as_ref()),
            ("noise-floor", self.noise_floor.as_ref()),
            ("density", self.density.as_ref()),
        ]
    }
}

#[derive(Args, Default)]
struct OptimizeArgs {
    /// Smallest gap fabrication allows, e.g. 5nm.
    #[arg(long)]
    gap_min: Option<String>,
    /// Largest gap worth considering, e.g. 60nm.
    #[arg(long)]
    gap_max: Option<String>,
    /// Stack height budget, e.g. 0.1m.
    #[arg(long)]
    total_thickness: Option<String>,
    /// Structural thickness added per layer on top of the gap, e.g. 95nm.
    #[arg(long)]
    layer_overhead: Option<String>,
    /// Disk diameter [default: 10cm].
    #[arg(long)]
    diameter: Option<String>,
    /// Spacer refractive index [default: 1.46, silica].
    #[arg(long)]
    spacer_index: Option<String>,
    /// Mirror plasma wavelength [default: 100nm, aluminum].
    #[arg(long)]
    plasma_wavelength: Option<String>,
    /// Local gravitational acceleration [default: 9.80665m/s2].
    #[arg(long)]
    g: Option<String>,
    /// Gap the reduction factor is evaluated at: optical or physical
    /// [default: optical].
    #[arg(long)]
    eta_gap: Option<String>,
    /// Coarse search grid size [default: 1024].
    #[arg(long)]
    grid_points: Option<String>,
}

impl OptimizeArgs {
    fn pairs(&self) -> Vec<(&'static str, Option<&String>)> {
        vec![
            ("gap-min", self.gap_min.as_ref()),
            ("gap-max", self.gap_max.as_ref()),
            ("total-thickness", self.total_thickness.as_ref()),
            ("layer-overhead", self.layer_overhead.as_ref()),
            ("diameter", self.diameter.as_ref()),
            ("spacer-index", self.spacer_index.as_ref()),
            ("plasma-wavelength", self.plasma_wavelength.as_ref()),
            ("g", self.g.as_ref()),
            ("eta-gap", self.eta_gap.as_ref()),
            ("grid-points", self.grid_points.as_ref()),
        ]
    }
}

#[derive(Args, Default)]
struct SweepArgs {
    /// Subcommand to sweep: ideal, oracle, gravity, eta, stack, or optimize.
    #[arg(long)]
    command: Option<String>,
    /// Numeric parameter of that subcommand to vary, e.g. gap.
    #[arg(long)]
    parameter: Option<String>,
    /// Grid spacing: linear or log [default: linear].
    #[arg(long)]
    scale: Option<String>,
    /// First grid value, in the parameter's own units, e.g. 5nm.
    #[arg(long)]
    start: Option<String>,
    /// Last grid value, e.g. 60nm.
    #[arg(long)]
    stop: Option<String>,
    /// Number of grid points, at least 2.
    #[arg(long)]
    points: Option<String>,
    /// Fixed parameter for the swept subcommand, as KEY=VALUE;
    /// repeatable, e.g. --param diameter=10cm.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    param: Vec<String>,
}

impl SweepArgs {
    fn pairs(&self) -> Vec<(&'static str, Option<&String>)> {
        vec![
            ("command", self.command.as_ref()),
            ("parameter", self.parameter.as_ref()),
            ("scale", self.scale.as_ref()),
            ("start", self.start.as_ref()),
            ("stop", self.stop.as_ref()),
            ("points", self.points.as_ref()),
        ]
    }
}

/// Parses and runs a full command line (first element is the program name),
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(error) => {
            // --help/--version land here too; clap picks the right stream.
            let _ = error.print();
            return if error.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            1
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32, CliError> {
    let mut map = match &cli.config {
        Some(path) => config::load_file(path)?,
        None => RawMap::new(),
    };
    let (envelope, code): (Value, i32) = match &cli.command {
        Command::Ideal(args) => single(CommandKind::Ideal, map, args.pairs())?,
        Command::Oracle(args) => single(CommandKind::Oracle, map, args.pairs())?,
        Command::Gravity(args) => single(CommandKind::Gravity, map, args.pairs())?,
        Command::Eta(args) => single(CommandKind::Eta, map, args.pairs())?,
        Command::Stack(args) => single(CommandKind::Stack, map, args.pairs())?,
        Command::Optimize(args) => single(CommandKind::Optimize, map, args.pairs())?,
        Command::Sweep(args) => {
            config::overlay_flags(&mut map, args.pairs());
            for pair in &args.param {
                let Some((key, value)) = pair.split_once('=') else {
                    return Err(CliError::invalid(format!(
                        "--param wants KEY=VALUE, got '{pair}'"
                    )));
                };
                map.insert(key.trim().to_owned(), value.trim().to_owned());
            }
            sweep::execute(map)?
        }
    };
    output::emit(&envelope, cli.format, cli.out.as_deref())?;
    Ok(code)
}

fn single(
    kind: CommandKind,
    mut map: RawMap,
    pairs: Vec<(&'static str, Option<&String>)>,
) -> Result<(Value, i32), CliError> {
    config::overlay_flags(&mut map, pairs);
    Ok((commands::execute(kind, map)?, 0))
}
