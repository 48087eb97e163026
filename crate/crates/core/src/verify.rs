//! Seeded invariant suite over random energies: flux conservation, unit
//! determinant, the two conjugate-symmetry relations and agreement with the
//! boundary-matching oracle.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::PotentialConfig;
use crate::error::Result;
use crate::matrix::Matrix2x2;
use crate::oracle::solve_amplitudes;
use crate::regime::boundary_energies;
use crate::transfer::{full_matrix, ScatteringResult};

pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_SEED: u64 = 2010;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifySettings {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Lower end of the sampled window, in units of the mass.
    pub e_min: f64,
    /// Upper end of the sampled window, in units of the mass. `None` means
    /// `V+ / m + 4`.
    pub e_max: Option<f64>,
    /// Exclusion window around singular and boundary energies, in units of
    /// the mass.
    pub exclusion: f64,
}

impl Default for VerifySettings {
    fn default() -> Self {
        VerifySettings {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            tolerance: 1e-10,
            e_min: 1.001,
            e_max: None,
            exclusion: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Unitarity,
    Determinant,
    DiagonalSymmetry,
    OffDiagonalSymmetry,
    OracleAgreement,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Unitarity,
        Check::Determinant,
        Check::DiagonalSymmetry,
        Check::OffDiagonalSymmetry,
        Check::OracleAgreement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Unitarity => "unitarity |T|^2+|R|^2-1",
            Check::Determinant => "determinant |det M - 1|",
            Check::DiagonalSymmetry => "symmetry |M11 - M22*|",
            Check::OffDiagonalSymmetry => "symmetry |M12 - M21*|",
            Check::OracleAgreement => "oracle |T - T_oracle|",
        }
    }
}

/// Worst deviation seen for one check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Worst {
    pub check: Check,
    pub deviation: f64,
    pub energy: f64,
}

impl Worst {
    pub fn passed(&self, tolerance: f64) -> bool {
        self.deviation < tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub cfg: PotentialConfig,
    pub settings: VerifySettings,
    pub window: (f64, f64),
    pub worst: Vec<Worst>,
    /// Energies at which evaluation itself failed, with the message.
    pub failures: Vec<(f64, String)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.worst.iter().all(|w| w.passed(self.settings.tolerance))
    }

    pub fn failed_checks(&self) -> Vec<Check> {
        self.worst
            .iter()
            .filter(|w| !w.passed(self.settings.tolerance))
            .map(|w| w.check)
            .collect()
    }

    pub fn worst_of(&self, check: Check) -> Option<Worst> {
        self.worst.iter().copied().find(|w| w.check == check)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.cfg;
        writeln!(
            f,
            "config: m={} v_plus={} v_minus={} a_plus={} a_minus={}",
            c.mass(),
            c.v_plus(),
            c.v_minus(),
            c.a_plus(),
            c.a_minus()
        )?;
        writeln!(
            f,
            "samples: {} seed: {} window: [{}, {}] tolerance: {:e}",
            self.settings.samples, self.settings.seed, self.window.0, self.window.1,
            self.settings.tolerance
        )?;
        for w in &self.worst {
            let status = if w.passed(self.settings.tolerance) { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{status} {:<28} worst {:.3e} at E = {:.12}",
                w.check.name(),
                w.deviation,
                w.energy
            )?;
        }
        for (e, msg) in &self.failures {
            writeln!(f, "FAIL evaluation at E = {e:.12}: {msg}")?;
        }
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Draws `n` energies uniformly from `(lo, hi)`, redrawing any that fall
/// within `exclusion` of a singular or boundary energy.
pub fn sample_energies(
    cfg: &PotentialConfig,
    n: usize,
    seed: u64,
    (lo, hi): (f64, f64),
    exclusion: f64,
) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let avoid = boundary_energies(cfg);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let e: f64 = rng.gen_range(lo..hi);
        if avoid.iter().all(|b| (e - b).abs() > exclusion) {
            out.push(e);
        }
    }
    out
}

struct Deviations([f64; 5]);

fn deviations(energy: f64, m: &Matrix2x2, cfg: &PotentialConfig) -> Result<Deviations> {
    let s = ScatteringResult::from_matrix(energy, m, cfg)?;
    let (diag, off) = m.conjugate_symmetry_deviation();
    let oracle = solve_amplitudes(energy, cfg)?;
    Ok(Deviations([
        (s.t2 + s.r2 - 1.0).abs(),
        (m.det() - 1.0).norm(),
        diag,
        off,
        (s.t - oracle.transmission()).norm(),
    ]))
}

/// Runs the suite with a caller-supplied transfer-matrix provider, so a
/// deliberately broken matrix can be checked against the same oracle.
pub fn run_with<F>(cfg: &PotentialConfig, settings: &VerifySettings, matrix: F) -> VerifyReport
where
    F: Fn(f64) -> Result<Matrix2x2> + Sync,
{
    let m = cfg.mass();
    let lo = settings.e_min * m;
    let hi = settings.e_max.map_or(cfg.v_plus() + 4.0 * m, |e| e * m);
    let energies = sample_energies(cfg, settings.samples, settings.seed, (lo, hi), settings.exclusion * m);

    let results: Vec<(f64, Result<Deviations>)> = energies
        .par_iter()
        .map(|&e| (e, matrix(e).and_then(|mat| deviations(e, &mat, cfg))))
        .collect();

    let mut worst: Vec<Worst> =
        Check::ALL.iter().map(|&check| Worst { check, deviation: 0.0, energy: f64::NAN }).collect();
    let mut failures = Vec::new();
    for (e, r) in results {
        match r {
            Ok(Deviations(devs)) => {
                for (w, d) in worst.iter_mut().zip(devs) {
                    // NaN counts as the worst possible deviation.
                    if d.is_nan() || d > w.deviation {
                        w.deviation = if d.is_nan() { f64::INFINITY } else { d };
                        w.energy = e;
                    }
                }
            }
            Err(err) => failures.push((e, err.to_string())),
        }
    }
    VerifyReport { cfg: *cfg, settings: *settings, window: (lo, hi), worst, failures }
}

pub fn run(cfg: &PotentialConfig, settings: &VerifySettings) -> VerifyReport {
    run_with(cfg, settings, |e| full_matrix(e, cfg))
}
