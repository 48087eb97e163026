use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{scan_for_report, write_curve_csv, ResonanceReport};
use super::transmission::GridArgs;
use super::{CliError, CliResult, ModelArgs, SweepParam, EXIT_OK};
use crate::config::PotentialConfig;
use crate::regime::Zone;

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Swept width.
    #[arg(long, value_enum)]
    pub param: SweepParam,
    /// First value of the swept width, in units of 1/m.
    #[arg(long)]
    pub from: f64,
    /// Last value of the swept width, in units of 1/m.
    #[arg(long)]
    pub to: f64,
    /// Number of frames (at least 2).
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub frames: u32,
    /// Output directory for frames and manifest.json.
    #[arg(long, default_value = "sweep")]
    pub out: PathBuf,
    /// Also write a resonance report per frame.
    #[arg(long)]
    pub resonances: bool,
    /// Upper end of the above-barrier resonance scan, in units of m
    /// (default V+/m + 3).
    #[arg(long)]
    pub res_e_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameEntry {
    pub value: f64,
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub resonances: Option<String>,
}

/// Index of a sweep: which width varied, the frames, and the fixed
/// parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepManifest {
    pub schema: u32,
    pub param: String,
    pub fixed: serde_json::Map<String, serde_json::Value>,
    pub frames: Vec<FrameEntry>,
    pub created: String,
}

struct Frame {
    value: f64,
    csv: String,
    report: Option<String>,
    counts: Vec<(Zone, usize)>,
}

fn frame_config(base: &PotentialConfig, param: SweepParam, value: f64) -> CliResult<PotentialConfig> {
    let width = value / base.mass();
    Ok(match param {
        SweepParam::AMinus => base.with_a_minus(width)?,
        SweepParam::APlus => base.with_a_plus(width)?,
    })
}

fn compute_frame(args: &SweepArgs, base: &PotentialConfig, value: f64) -> CliResult<Frame> {
    let cfg = frame_config(base, args.param, value)?;
    let csv = write_curve_csv(&args.grid.rows(&cfg)?);
    let (report, counts) = if args.resonances {
        let m = cfg.mass();
        let e_max = args.res_e_max.map_or(cfg.v_plus() + 3.0 * m, |e| e * m);
        let scans = scan_for_report(&cfg, &Zone::ALL, e_max, 4000)?;
        let counts = scans.iter().map(|s| (s.zone, s.resonances.len())).collect();
        (Some(ResonanceReport::new(&cfg, &scans, e_max).to_json()), counts)
    } else {
        (None, vec![])
    };
    Ok(Frame { value, csv, report, counts })
}

fn fixed_parameters(cfg: &PotentialConfig, param: SweepParam) -> serde_json::Map<String, serde_json::Value> {
    let mut fixed = serde_json::Map::new();
    fixed.insert("m".into(), cfg.mass().into());
    fixed.insert("v_plus".into(), cfg.v_plus().into());
    fixed.insert("v_minus".into(), cfg.v_minus().into());
    match param {
        SweepParam::AMinus => fixed.insert("a_plus".into(), cfg.a_plus().into()),
        SweepParam::APlus => fixed.insert("a_minus".into(), cfg.a_minus().into()),
    };
    fixed
}

/// Files written so far; removed again unless the sweep completes.
struct Cleanup {
    files: Vec<PathBuf>,
    created_dir: Option<PathBuf>,
    armed: bool,
}

impl Cleanup {
    fn write(&mut self, path: PathBuf, contents: &str) -> CliResult<()> {
        fs::write(&path, contents)
            .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))?;
        self.files.push(path);
        Ok(())
    }
}

impl Drop for Cleanup {
    fn drop(&mut self) {
        if !self.armed {
            return;
        }
        for f in &self.files {
            let _ = fs::remove_file(f);
        }
        if let Some(dir) = &self.created_dir {
            let _ = fs::remove_dir(dir);
        }
    }
}

pub fn frame_values(from: f64, to: f64, frames: u32) -> Vec<f64> {
    let n = frames as usize;
    (0..n).map(|i| if i + 1 == n { to } else { from + (to - from) * i as f64 / (n - 1) as f64 }).collect()
}

fn write_sweep(out: &Path, args: &SweepArgs, base: &PotentialConfig, frames: &[Frame]) -> CliResult<()> {
    let created_dir = if out.exists() { None } else { Some(out.to_path_buf()) };
    fs::create_dir_all(out)?;
    let mut cleanup = Cleanup { files: vec![], created_dir, armed: true };

    let mut entries = Vec::with_capacity(frames.len());
    for (i, frame) in frames.iter().enumerate() {
        let file = format!("frame_{i:04}.csv");
        cleanup.write(out.join(&file), &frame.csv)?;
        let resonances = match &frame.report {
            Some(json) => {
                let name = format!("frame_{i:04}.json");
                cleanup.write(out.join(&name), json)?;
                Some(name)
            }
            None => None,
        };
        entries.push(FrameEntry { value: frame.value, file, resonances });
    }

    let manifest = SweepManifest {
        schema: 1,
        param: args.param.name().to_string(),
        fixed: fixed_parameters(base, args.param),
        frames: entries,
        created: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    };
    let json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| CliError::Failure(format!("manifest: {e}")))?;
    cleanup.write(out.join("manifest.json"), &format!("{json}\n"))?;
    cleanup.armed = false;
    Ok(())
}

pub(crate) fn run(args: &SweepArgs) -> CliResult<i32> {
    if !(args.from < args.to) {
        return Err(CliError::Usage("--from must be smaller than --to".into()));
    }
    let base = args.model.resolve()?;
    let values = frame_values(args.from, args.to, args.frames);
    // Validate the extreme frames up front so nothing is computed for a
    // sweep that leaves the admissible parameter space.
    for &v in [values[0], values[values.len() - 1]].iter() {
        frame_config(&base, args.param, v)?;
    }
    args.grid.window(&base)?;

    let pool = args.model.pool()?;
    let frames = pool.install(|| {
        values.par_iter().map(|&v| compute_frame(args, &base, v)).collect::<CliResult<Vec<_>>>()
    })?;
    write_sweep(&args.out, args, &base, &frames)?;

    for (i, f) in frames.iter().enumerate() {
        if f.counts.is_empty() {
            continue;
        }
        let counts: Vec<String> = f.counts.iter().map(|(z, n)| format!("{z}={n}")).collect();
        println!("frame {i:04} {}={} {}", args.param.name(), f.value, counts.join(" "));
    }
    println!("wrote {} frames to {}", frames.len(), args.out.display());
    Ok(EXIT_OK)
}
