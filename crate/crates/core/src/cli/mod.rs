//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invariant or runtime failure, 2 usage error,
//! 3 configuration violation.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::config::PotentialConfig;
use crate::error::Error;

mod report;
mod svg;
mod sweep;
mod transmission;
mod verify_cmd;

pub use report::{curve_rows, write_curve_csv, CurveRow, ResonanceReport, CSV_HEADER};
pub use sweep::SweepManifest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Config(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Config(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::InvalidConfig(_) => CliError::Config(err.to_string()),
            Error::InvalidArgument(_) => CliError::Usage(err.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Failure(format!("i/o error: {err}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "dirac-barrier",
    version,
    about = "Dirac double-barrier scattering: transmission curves, resonances, sweeps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write |T|^2, |R|^2 and the complex amplitudes over an energy grid.
    Transmission(transmission::TransmissionArgs),
    /// Locate and tabulate full-transmission resonances per zone.
    Resonances(report::ResonanceArgs),
    /// Emit one transmission frame per value of a swept width.
    Sweep(sweep::SweepArgs),
    /// Check unitarity, symmetry and oracle agreement at random energies.
    Verify(verify_cmd::VerifyArgs),
}

/// Flags shared by every command. Energies are in units of the mass and
/// lengths in units of its inverse.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Particle mass m (default 1).
    #[arg(long)]
    pub mass: Option<f64>,
    /// Barrier height V+ / m (default 8).
    #[arg(long)]
    pub v_plus: Option<f64>,
    /// Floor height V- / m (default 4).
    #[arg(long)]
    pub v_minus: Option<f64>,
    /// Barrier width a+ m (default 3).
    #[arg(long)]
    pub a_plus: Option<f64>,
    /// Floor half-width a- m (default 2.5).
    #[arg(long)]
    pub a_minus: Option<f64>,
    /// JSON file with any of the keys m, v_plus, v_minus, a_plus, a_minus.
    /// Explicit flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Worker threads for grid evaluation (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(alias = "mass")]
    m: Option<f64>,
    v_plus: Option<f64>,
    v_minus: Option<f64>,
    a_plus: Option<f64>,
    a_minus: Option<f64>,
}

impl ModelArgs {
    pub fn resolve(&self) -> CliResult<PotentialConfig> {
        let file = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| {
                    CliError::Usage(format!("cannot read config {}: {e}", path.display()))
                })?;
                serde_json::from_str::<ConfigFile>(&text).map_err(|e| {
                    CliError::Usage(format!("malformed config {}: {e}", path.display()))
                })?
            }
            None => ConfigFile::default(),
        };
        let reference = PotentialConfig::reference();
        let m = self.mass.or(file.m).unwrap_or(reference.mass());
        let vp = self.v_plus.or(file.v_plus).unwrap_or(reference.v_plus());
        let vm = self.v_minus.or(file.v_minus).unwrap_or(reference.v_minus());
        let ap = self.a_plus.or(file.a_plus).unwrap_or(reference.a_plus());
        let am = self.a_minus.or(file.a_minus).unwrap_or(reference.a_minus());
        Ok(PotentialConfig::new(m, vp * m, vm * m, ap / m, am / m)?)
    }

    fn pool(&self) -> CliResult<rayon::ThreadPool> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = self.threads {
            if n == 0 {
                return Err(CliError::Usage("--threads must be at least 1".into()));
            }
            builder = builder.num_threads(n);
        }
        builder.build().map_err(|e| CliError::Failure(format!("thread pool: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    AMinus,
    APlus,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::AMinus => "a-minus",
            SweepParam::APlus => "a-plus",
        }
    }
}

pub(crate) fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, contents)
        .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))
}

fn dispatch(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Transmission(args) => transmission::run(&args),
        Command::Resonances(args) => report::run(&args),
        Command::Sweep(args) => sweep::run(&args),
        Command::Verify(args) => verify_cmd::run(&args),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}

pub fn run() -> i32 {
    run_from(std::env::args_os())
}
