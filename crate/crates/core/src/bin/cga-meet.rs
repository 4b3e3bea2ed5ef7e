//! Command-line front end: meets, sweeps and cross-checks of scene files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cga_meet::scene::{
    locus_csv, run_check, run_locus, run_meet, sweep_distances, to_json, SceneError, SceneSpec,
};

#[derive(Parser)]
#[command(
    name = "cga-meet",
    version,
    about = "Real and virtual intersections of circles, lines, spheres and planes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scene file (TOML).
    scene: PathBuf,
    /// Relative tolerance for tangency; overrides the scene value.
    #[arg(long, allow_negative_numbers = true)]
    tolerance: Option<f64>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Meet the two objects and print the result as JSON.
    Meet(Common),
    /// Sweep the center distance and print a CSV table.
    Locus {
        #[command(flatten)]
        common: Common,
        /// Smallest center distance (must be positive)
        #[arg(long, allow_negative_numbers = true)]
        d_min: Option<f64>,
        /// Largest center distance
        #[arg(long, allow_negative_numbers = true)]
        d_max: Option<f64>,
        /// Number of evenly spaced distances, endpoints included
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Compare the meet, closed-form and classical values of r².
    Check(Common),
}

fn load(common: &Common) -> Result<(SceneSpec, f64), SceneError> {
    let text = fs::read_to_string(&common.scene)
        .map_err(|e| SceneError::Parse(format!("{}: {e}", common.scene.display())))?;
    let spec = SceneSpec::from_toml(&text)?;
    let tolerance = common.tolerance.unwrap_or(spec.tolerance);
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(SceneError::Field {
            field: "tolerance".into(),
            message: "must be positive and finite".into(),
        });
    }
    Ok((spec, tolerance))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), SceneError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| SceneError::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn missing(field: &str) -> SceneError {
    SceneError::Field {
        field: field.into(),
        message: "missing (give the flag or set it in the scene)".into(),
    }
}

fn run(cli: Cli) -> Result<(), SceneError> {
    match cli.command {
        Command::Meet(common) => {
            let (spec, tol) = load(&common)?;
            emit(common.output.as_deref(), &to_json(&run_meet(&spec, tol)?))
        }
        Command::Check(common) => {
            let (spec, tol) = load(&common)?;
            emit(common.output.as_deref(), &to_json(&run_check(&spec, tol)?))
        }
        Command::Locus {
            common,
            d_min,
            d_max,
            steps,
        } => {
            let (spec, tol) = load(&common)?;
            let d_min = d_min.or(spec.d_min).ok_or_else(|| missing("d-min"))?;
            let d_max = d_max.or(spec.d_max).ok_or_else(|| missing("d-max"))?;
            let steps = steps.or(spec.steps).ok_or_else(|| missing("steps"))?;
            let ds = sweep_distances(d_min, d_max, steps)?;
            let planar = spec.locus_config()?.is_planar();
            let samples = run_locus(&spec, &ds, tol)?;
            emit(common.output.as_deref(), &locus_csv(&samples, planar))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
