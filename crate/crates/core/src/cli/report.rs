use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::value::RawValue;

use super::{write_file, CliError, CliResult, ModelArgs, EXIT_OK};
use crate::config::PotentialConfig;
use crate::error::Result;
use crate::format::{energy10, raw_number, sig12};
use crate::regime::{boundary_energies, Zone};
use crate::resonance::{scan_zones, SearchSettings, ZoneScan};
use crate::transfer::scatter;

pub const CSV_HEADER: &str = "E,T2,R2,reT,imT,reR,imR";

/// Grid points closer than this (in units of m) to a singular or boundary
/// energy are pushed out to exactly this distance.
pub const GRID_NUDGE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub energy: f64,
    pub t2: f64,
    pub r2: f64,
    pub re_t: f64,
    pub im_t: f64,
    pub re_r: f64,
    pub im_r: f64,
}

/// Uniform grid on `[e_min, e_max]` (physical units) that keeps every
/// point at least `GRID_NUDGE * m` away from singular and boundary energies.
pub fn energy_grid(cfg: &PotentialConfig, e_min: f64, e_max: f64, points: usize) -> Vec<f64> {
    let window = GRID_NUDGE * cfg.mass();
    let avoid = boundary_energies(cfg);
    let step = if points > 1 { (e_max - e_min) / (points - 1) as f64 } else { 0.0 };
    (0..points)
        .map(|i| {
            let mut e = if i + 1 == points { e_max } else { e_min + step * i as f64 };
            for &b in &avoid {
                if (e - b).abs() < window {
                    e = if e >= b { b + window } else { b - window };
                }
            }
            e
        })
        .collect()
}

pub fn curve_rows(cfg: &PotentialConfig, energies: &[f64]) -> Result<Vec<CurveRow>> {
    energies
        .par_iter()
        .map(|&e| {
            let s = scatter(e, cfg)?;
            Ok(CurveRow {
                energy: e,
                t2: s.t2,
                r2: s.r2,
                re_t: s.t.re,
                im_t: s.t.im,
                re_r: s.r.re,
                im_r: s.r.im,
            })
        })
        .collect()
}

pub fn write_curve_csv(rows: &[CurveRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 96);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [r.energy, r.t2, r.r2, r.re_t, r.im_t, r.re_r, r.im_r].map(sig12);
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize)]
struct ConfigEcho {
    m: Box<RawValue>,
    v_plus: Box<RawValue>,
    v_minus: Box<RawValue>,
    a_plus: Box<RawValue>,
    a_minus: Box<RawValue>,
}

impl ConfigEcho {
    fn new(cfg: &PotentialConfig) -> Self {
        let n = |x: f64| raw_number(sig12(x));
        ConfigEcho {
            m: n(cfg.mass()),
            v_plus: n(cfg.v_plus()),
            v_minus: n(cfg.v_minus()),
            a_plus: n(cfg.a_plus()),
            a_minus: n(cfg.a_minus()),
        }
    }
}

#[derive(Debug, Serialize)]
struct ResonanceEntry {
    energy: Box<RawValue>,
    residual: Box<RawValue>,
    fwhm: Option<Box<RawValue>>,
    level: usize,
}

#[derive(Debug, Serialize)]
struct ZoneEntry {
    name: &'static str,
    boundaries: [Box<RawValue>; 2],
    resonances: Vec<ResonanceEntry>,
}

/// Versioned resonance report.
#[derive(Debug, Serialize)]
pub struct ResonanceReport {
    schema: u32,
    config: ConfigEcho,
    zones: Vec<ZoneEntry>,
}

impl ResonanceReport {
    /// `e_max` closes the above-barrier zone in the echoed boundaries.
    pub fn new(cfg: &PotentialConfig, scans: &[ZoneScan], e_max: f64) -> Self {
        let zones = scans
            .iter()
            .map(|scan| {
                let (lo, hi) = scan.zone.bounds(cfg);
                let hi = if hi.is_finite() { hi } else { e_max };
                ZoneEntry {
                    name: scan.zone.name(),
                    boundaries: [raw_number(sig12(lo)), raw_number(sig12(hi))],
                    resonances: scan
                        .resonances
                        .iter()
                        .map(|r| ResonanceEntry {
                            energy: raw_number(energy10(r.energy)),
                            residual: raw_number(sig12(r.residual)),
                            fwhm: r.fwhm.map(|w| raw_number(sig12(w))),
                            level: r.level,
                        })
                        .collect(),
                }
            })
            .collect();
        ResonanceReport { schema: 1, config: ConfigEcho::new(cfg), zones }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

pub(crate) fn parse_zones(names: &[String]) -> CliResult<Vec<Zone>> {
    let mut zones = Vec::new();
    for name in names {
        if name == "all" {
            zones.extend(Zone::ALL);
        } else {
            zones.push(name.parse::<Zone>().map_err(|e| CliError::Usage(e.to_string()))?);
        }
    }
    zones.sort();
    zones.dedup();
    Ok(zones)
}

/// Runs the zone scans behind a resonance report. `e_max` is in physical
/// units and only consulted for the above-barrier zone.
pub(crate) fn scan_for_report(
    cfg: &PotentialConfig,
    zones: &[Zone],
    e_max: f64,
    grid_points: usize,
) -> CliResult<Vec<ZoneScan>> {
    let settings = SearchSettings { grid_points_per_zone: grid_points, ..Default::default() };
    if zones.contains(&Zone::AboveBarrier) && !(e_max > cfg.v_plus() + cfg.mass()) {
        return Err(CliError::Usage(format!(
            "--e-max must exceed V+/m + 1 = {}",
            (cfg.v_plus() + cfg.mass()) / cfg.mass()
        )));
    }
    Ok(scan_zones(cfg, zones, Some(e_max), &settings)?)
}

#[derive(Debug, Clone, Args)]
pub struct ResonanceArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Zones to scan: all, lower-klein, gap-lower, higher-klein,
    /// conventional, above-barrier (comma separated or repeated).
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub zone: Vec<String>,
    /// Upper end of the above-barrier scan, in units of m (default V+/m + 3).
    #[arg(long)]
    pub e_max: Option<f64>,
    /// Grid points per zone for the minimum scan.
    #[arg(long, default_value_t = 4000)]
    pub grid_points: usize,
    /// Output JSON report.
    #[arg(long, default_value = "resonances.json")]
    pub out: PathBuf,
}

pub(crate) fn run(args: &ResonanceArgs) -> CliResult<i32> {
    let cfg = args.model.resolve()?;
    let zones = parse_zones(&args.zone)?;
    let m = cfg.mass();
    let e_max = args.e_max.map_or(cfg.v_plus() + 3.0 * m, |e| e * m);
    let pool = args.model.pool()?;
    let scans = pool.install(|| scan_for_report(&cfg, &zones, e_max, args.grid_points))?;

    let report = ResonanceReport::new(&cfg, &scans, e_max);
    write_file(&args.out, &report.to_json())?;

    let mut table = String::new();
    for scan in &scans {
        let _ = writeln!(table, "{} ({} resonances)", scan.zone, scan.resonances.len());
        for r in &scan.resonances {
            let width = r.fwhm.map_or_else(|| "-".to_string(), sig12);
            let _ = writeln!(
                table,
                "  level {:>2}  E = {}  |M21| = {:.2e}  fwhm = {}",
                r.level,
                energy10(r.energy),
                r.residual,
                width
            );
        }
    }
    print!("{table}");
    println!("wrote {}", args.out.display());
    Ok(EXIT_OK)
}
