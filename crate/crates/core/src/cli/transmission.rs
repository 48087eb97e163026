use std::path::PathBuf;

use clap::Args;

use super::report::{curve_rows, energy_grid, write_curve_csv, CurveRow};
use super::{svg, write_file, CliError, CliResult, ModelArgs, EXIT_OK};
use crate::config::PotentialConfig;
use crate::regime::Zone;

/// Energy window and grid flags shared by `transmission` and `sweep`.
#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Lower end of the energy window, in units of m.
    #[arg(long, default_value_t = 1.001)]
    pub e_min: f64,
    /// Upper end of the energy window, in units of m (default V+/m + 4).
    #[arg(long)]
    pub e_max: Option<f64>,
    /// Number of grid points.
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
}

impl GridArgs {
    /// Validated window in physical units.
    pub fn window(&self, cfg: &PotentialConfig) -> CliResult<(f64, f64)> {
        let m = cfg.mass();
        let e_min = self.e_min * m;
        let e_max = self.e_max.map_or(cfg.v_plus() + 4.0 * m, |e| e * m);
        if !(self.e_min > 1.0) || !e_min.is_finite() {
            return Err(CliError::Usage(format!(
                "--e-min must exceed 1 (the scattering threshold E = m), got {}",
                self.e_min
            )));
        }
        if !(e_max > e_min) || !e_max.is_finite() {
            return Err(CliError::Usage("--e-max must exceed --e-min".into()));
        }
        if self.points < 2 {
            return Err(CliError::Usage("--points must be at least 2".into()));
        }
        Ok((e_min, e_max))
    }

    pub fn rows(&self, cfg: &PotentialConfig) -> CliResult<Vec<CurveRow>> {
        let (lo, hi) = self.window(cfg)?;
        Ok(curve_rows(cfg, &energy_grid(cfg, lo, hi, self.points))?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct TransmissionArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Output CSV file.
    #[arg(long, default_value = "transmission.csv")]
    pub out: PathBuf,
    /// Also write an SVG line plot of |T|^2 to this path.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

pub(crate) fn print_zones(cfg: &PotentialConfig) {
    for zone in Zone::ALL {
        let (lo, hi) = zone.bounds(cfg);
        println!("zone {:<14} ({lo}, {hi})", zone.name());
    }
}

pub(crate) fn run(args: &TransmissionArgs) -> CliResult<i32> {
    let cfg = args.model.resolve()?;
    let window = args.grid.window(&cfg)?;
    let pool = args.model.pool()?;
    let rows = pool.install(|| args.grid.rows(&cfg))?;

    write_file(&args.out, &write_curve_csv(&rows))?;
    if let Some(path) = &args.svg {
        write_file(path, &svg::render(&cfg, &rows, window))?;
    }

    print_zones(&cfg);
    let flux = rows.iter().map(|r| (r.t2 + r.r2 - 1.0).abs()).fold(0.0, f64::max);
    println!("wrote {} rows to {} (max |T2+R2-1| = {flux:.2e})", rows.len(), args.out.display());
    Ok(EXIT_OK)
}
