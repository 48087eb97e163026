//! Transmission resonances: energies where `M21(E) = 0`, equivalently
//! `|T(E)|^2 = 1`.
//!
//! Each zone is scanned on a uniform grid of `|M21|^2`. Every local minimum
//! brackets a candidate, which is refined by Brent's method on whichever
//! real component of `M21` changes sign across the bracket. Refining a
//! linear root rather than the quadratic minimum is what recovers full
//! double precision.

use rayon::prelude::*;

use crate::config::PotentialConfig;
use crate::error::{Error, Result};
use crate::regime::{boundary_energies, Zone};
use crate::roots::{bisect_crossing, brent_root, golden_minimum};
use crate::transfer::full_matrix;
use num_complex::Complex64;

/// Scan and refinement parameters. Energy-valued fields are in units of
/// the mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchSettings {
    pub grid_points_per_zone: usize,
    pub refine_tolerance: f64,
    pub singular_margin: f64,
    pub residual_accept: f64,
}

impl Default for SearchSettings {
    fn default() -> Self {
        SearchSettings {
            grid_points_per_zone: 4000,
            refine_tolerance: 1e-12,
            singular_margin: 1e-6,
            residual_accept: 1e-8,
        }
    }
}

impl SearchSettings {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points_per_zone < 16 {
            return Err(Error::InvalidArgument(format!(
                "grid_points_per_zone must be at least 16 (got {})",
                self.grid_points_per_zone
            )));
        }
        let positive = [self.refine_tolerance, self.singular_margin, self.residual_accept];
        if positive.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidArgument(
                "search tolerances and margins must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// A refined full-transmission energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub energy: f64,
    pub zone: Zone,
    /// `|M21(energy)|`
    pub residual: f64,
    /// Full width at half maximum of `|T|^2`, when both half crossings exist.
    pub fwhm: Option<f64>,
    /// Ordinal within the zone, from zero at the lowest energy.
    pub level: usize,
}

/// A grid minimum that did not refine to a zero of `M21`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RejectedCandidate {
    pub energy: f64,
    pub residual: f64,
}

impl RejectedCandidate {
    pub fn to_error(self) -> Error {
        Error::RefinementFailed { energy: self.energy, residual: self.residual }
    }
}

/// Result of scanning one zone.
#[derive(Debug, Clone, PartialEq)]
pub struct ZoneScan {
    pub zone: Zone,
    /// The scanned interval, after shrinking by the singular margin.
    pub interval: (f64, f64),
    pub resonances: Vec<Resonance>,
    pub rejected: Vec<RejectedCandidate>,
}

/// Moves an energy sitting on a range or zone boundary just off it. The
/// physical `M(E)` is continuous there, only the formula selection is not.
fn off_boundary(energy: f64, cfg: &PotentialConfig) -> f64 {
    let window = 2.0 * cfg.singular_tolerance();
    for b in boundary_energies(cfg) {
        if (energy - b).abs() < window {
            return if energy >= b { b + window } else { b - window };
        }
    }
    energy
}

fn m21(energy: f64, cfg: &PotentialConfig) -> Result<Complex64> {
    Ok(full_matrix(off_boundary(energy, cfg), cfg)?.m21)
}

fn transmission(energy: f64, cfg: &PotentialConfig) -> Result<f64> {
    Ok(1.0 / (1.0 + m21(energy, cfg)?.norm_sqr()))
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| if i + 1 == n { hi } else { lo + step * i as f64 }).collect()
}

/// Refines one bracket. `Ok(Err(_))` is an in-band rejection.
fn refine(
    lo: f64,
    hi: f64,
    cfg: &PotentialConfig,
    settings: &SearchSettings,
) -> Result<std::result::Result<(f64, f64), RejectedCandidate>> {
    let xtol = settings.refine_tolerance * cfg.mass();
    let (f_lo, f_hi) = (m21(lo, cfg)?, m21(hi, cfg)?);

    let strength = |a: f64, b: f64| if a.signum() != b.signum() { a.abs().min(b.abs()) } else { -1.0 };
    let re = strength(f_lo.re, f_hi.re);
    let im = strength(f_lo.im, f_hi.im);

    let energy = if re < 0.0 && im < 0.0 {
        golden_minimum(|e| Ok(m21(e, cfg)?.norm_sqr()), lo, hi, xtol)?.0
    } else if im >= re {
        brent_root(|e| Ok(m21(e, cfg)?.im), lo, hi, xtol)?
    } else {
        brent_root(|e| Ok(m21(e, cfg)?.re), lo, hi, xtol)?
    };
    let residual = m21(energy, cfg)?.norm();
    if residual < settings.residual_accept {
        Ok(Ok((energy, residual)))
    } else {
        Ok(Err(RejectedCandidate { energy, residual }))
    }
}

/// Scans `(lo, hi)` for zeros of `M21`. Resonances come back sorted with
/// levels assigned but without widths.
fn scan_interval(
    zone: Zone,
    lo: f64,
    hi: f64,
    points: usize,
    cfg: &PotentialConfig,
    settings: &SearchSettings,
) -> Result<ZoneScan> {
    let mut scan = ZoneScan { zone, interval: (lo, hi), resonances: vec![], rejected: vec![] };
    if !(hi > lo) {
        return Ok(scan);
    }
    let es = grid(lo, hi, points);
    let g = es.iter().map(|&e| Ok(m21(e, cfg)?.norm_sqr())).collect::<Result<Vec<f64>>>()?;

    let n = es.len();
    let mut brackets = Vec::new();
    if g[0] < g[1] {
        brackets.push((es[0], es[1]));
    }
    for i in 1..n - 1 {
        if g[i] <= g[i - 1] && g[i] < g[i + 1] {
            brackets.push((es[i - 1], es[i + 1]));
        }
    }
    if g[n - 1] < g[n - 2] {
        brackets.push((es[n - 2], es[n - 1]));
    }

    let mut found: Vec<(f64, f64)> = Vec::new();
    for (a, b) in brackets {
        match refine(a, b, cfg, settings)? {
            Ok((energy, residual)) if zone.contains(energy, cfg) => found.push((energy, residual)),
            Ok((energy, residual)) | Err(RejectedCandidate { energy, residual }) => {
                scan.rejected.push(RejectedCandidate { energy, residual })
            }
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    let merge = 1e3 * settings.refine_tolerance * cfg.mass();
    found.dedup_by(|next, prev| (next.0 - prev.0).abs() < merge);

    scan.resonances = found
        .into_iter()
        .enumerate()
        .map(|(level, (energy, residual))| Resonance { energy, zone, residual, fwhm: None, level })
        .collect();
    Ok(scan)
}

fn scan_zone(
    zone: Zone,
    e_max: Option<f64>,
    cfg: &PotentialConfig,
    settings: &SearchSettings,
) -> Result<ZoneScan> {
    let margin = settings.singular_margin * cfg.mass();
    let (lo, mut hi) = zone.bounds(cfg);
    let mut points = settings.grid_points_per_zone;
    if zone == Zone::AboveBarrier {
        hi = e_max.ok_or_else(|| {
            Error::InvalidArgument("the above-barrier zone needs an upper energy".into())
        })?;
        // Keep at least the barrier-top band's grid density on wide windows.
        let widths = (hi - lo) / (2.0 * cfg.mass());
        if widths > 1.0 {
            points = (points as f64 * widths).ceil() as usize;
        }
    }
    let mut scan = scan_interval(zone, lo + margin, hi - margin, points, cfg, settings)?;
    for res in &mut scan.resonances {
        res.fwhm = estimate_fwhm(res, cfg, settings);
    }
    Ok(scan)
}

/// Scans the requested zones concurrently. `e_max` bounds the
/// above-barrier zone and is required only when that zone is requested.
/// Output order follows `Zone::ALL`, independent of the request order.
pub fn scan_zones(
    cfg: &PotentialConfig,
    zones: &[Zone],
    e_max: Option<f64>,
    settings: &SearchSettings,
) -> Result<Vec<ZoneScan>> {
    settings.validate()?;
    if zones.is_empty() {
        return Err(Error::InvalidArgument("at least one zone must be requested".into()));
    }
    if let Some(e) = e_max {
        if zones.contains(&Zone::AboveBarrier) && !(e > cfg.v_plus() + cfg.mass()) {
            return Err(Error::InvalidArgument(format!(
                "e_max must exceed V+ + m = {} (got {e})",
                cfg.v_plus() + cfg.mass()
            )));
        }
    }
    let mut wanted: Vec<Zone> = zones.to_vec();
    wanted.sort();
    wanted.dedup();
    wanted.par_iter().map(|&z| scan_zone(z, e_max, cfg, settings)).collect()
}

/// Resonances in the bounded zones, sorted by energy. The above-barrier
/// zone is handled by [`find_above_barrier`].
pub fn find_resonances(
    cfg: &PotentialConfig,
    zones: &[Zone],
    settings: &SearchSettings,
) -> Result<Vec<Resonance>> {
    if zones.contains(&Zone::AboveBarrier) {
        return Err(Error::InvalidArgument(
            "the above-barrier zone is unbounded; use find_above_barrier".into(),
        ));
    }
    let scans = scan_zones(cfg, zones, None, settings)?;
    let mut all: Vec<Resonance> = scans.into_iter().flat_map(|s| s.resonances).collect();
    all.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(all)
}

/// Resonances in `(V+ + m, e_max)`.
pub fn find_above_barrier(
    cfg: &PotentialConfig,
    e_max: f64,
    settings: &SearchSettings,
) -> Result<Vec<Resonance>> {
    if !(e_max > cfg.v_plus() + cfg.mass()) {
        return Err(Error::InvalidArgument(format!(
            "e_max must exceed V+ + m = {} (got {e_max})",
            cfg.v_plus() + cfg.mass()
        )));
    }
    let mut scans = scan_zones(cfg, &[Zone::AboveBarrier], Some(e_max), settings)?;
    Ok(scans.pop().map(|s| s.resonances).unwrap_or_default())
}

/// Walks outward from `from` until `|T|^2` drops below one half, then
/// bisects the crossing. `None` when the limit is reached first or the
/// curve turns back up while still above one half (an overlapping peak).
fn half_crossing(
    from: f64,
    direction: f64,
    limit: f64,
    max_step: f64,
    cfg: &PotentialConfig,
    settings: &SearchSettings,
) -> Option<f64> {
    let mut step = 1e-9 * cfg.mass();
    let mut dist = 0.0;
    let mut prev = (from, 1.0);
    loop {
        step = (step * 2.0).min(max_step);
        dist += step;
        let x = from + direction * dist;
        if (limit - x) * direction <= 0.0 {
            return None;
        }
        let t2 = transmission(x, cfg).ok()?;
        if t2 < 0.5 {
            let xtol = settings.refine_tolerance * cfg.mass();
            return bisect_crossing(|e| Ok(transmission(e, cfg)? - 0.5), prev.0, x, xtol).ok();
        }
        if prev.1 < 1.0 - 1e-6 && t2 > prev.1 {
            return None;
        }
        prev = (x, t2);
    }
}

/// Full width at half maximum of the `|T|^2` peak around a resonance,
/// confined to its zone.
pub fn estimate_fwhm(
    res: &Resonance,
    cfg: &PotentialConfig,
    settings: &SearchSettings,
) -> Option<f64> {
    let margin = settings.singular_margin * cfg.mass();
    let (lo, hi) = res.zone.bounds(cfg);
    let span = if hi.is_finite() { hi - lo } else { 2.0 * cfg.mass() };
    let hi = if hi.is_finite() { hi } else { res.energy + span };
    let max_step = span / settings.grid_points_per_zone.max(16) as f64;

    let left = half_crossing(res.energy, -1.0, lo + margin, max_step, cfg, settings)?;
    let right = half_crossing(res.energy, 1.0, hi - margin, max_step, cfg, settings)?;
    Some(right - left)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn settings_validation() {
        assert!(SearchSettings::default().validate().is_ok());
        let few = SearchSettings { grid_points_per_zone: 8, ..Default::default() };
        assert!(few.validate().is_err());
        let neg = SearchSettings { refine_tolerance: -1.0, ..Default::default() };
        assert!(neg.validate().is_err());
    }

    #[test]
    fn boundary_nudge() {
        let cfg = PotentialConfig::reference();
        assert!(off_boundary(8.0, &cfg) > 8.0);
        assert!(off_boundary(4.0 - 1e-10, &cfg) < 4.0);
        assert_eq!(off_boundary(6.0, &cfg), 6.0);
        assert!(m21(8.0, &cfg).is_ok());
    }

    #[test]
    fn conventional_zone_of_reference() {
        let cfg = PotentialConfig::reference();
        let res = find_resonances(&cfg, &[Zone::Conventional], &SearchSettings::default()).unwrap();
        let expect = [7.202_254_458_2, 7.703_332_045_8, 8.210_366_563_3, 8.700_720_620_3];
        assert_eq!(res.len(), expect.len());
        for (r, e) in res.iter().zip(expect) {
            assert!((r.energy - e).abs() < 1e-8, "{} vs {e}", r.energy);
            assert!(r.residual < 1e-8);
        }
        assert_eq!(res.iter().map(|r| r.level).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn gap_zone_has_no_resonances_but_rejects_a_minimum() {
        let cfg = PotentialConfig::reference();
        let scans =
            scan_zones(&cfg, &[Zone::GapLower], None, &SearchSettings::default()).unwrap();
        assert!(scans[0].resonances.is_empty());
        assert!(!scans[0].rejected.is_empty());
        assert!(scans[0].rejected[0].residual >= 1e-8);
    }

    #[test]
    fn above_barrier_requires_bounded_window() {
        let cfg = PotentialConfig::reference();
        let s = SearchSettings::default();
        assert!(find_above_barrier(&cfg, 8.5, &s).is_err());
        assert!(find_resonances(&cfg, &[Zone::AboveBarrier], &s).is_err());
        assert!(find_resonances(&cfg, &[], &s).is_err());
        let tiny = cfg.v_plus() + cfg.mass() + 2.0 * s.singular_margin;
        assert!(find_above_barrier(&cfg, tiny, &s).unwrap().is_empty());
    }

    #[test]
    fn truncated_above_barrier_window() {
        let cfg = PotentialConfig::reference();
        let res = find_above_barrier(&cfg, 9.2, &SearchSettings::default()).unwrap();
        assert_eq!(res.len(), 1);
        assert!((res[0].energy - 9.126_597_902_0).abs() < 1e-8);
    }
}
