use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::PotentialConfig;
use crate::error::{Error, Result};

/// Energy range that selects which set of transfer matrices applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MatrixRange {
    /// `m < E < V-`
    RangeI,
    /// `V- < E < V+`
    RangeII,
    /// `E > V+`
    RangeIII,
}

impl MatrixRange {
    pub fn bounds(self, cfg: &PotentialConfig) -> (f64, f64) {
        match self {
            MatrixRange::RangeI => (cfg.mass(), cfg.v_minus()),
            MatrixRange::RangeII => (cfg.v_minus(), cfg.v_plus()),
            MatrixRange::RangeIII => (cfg.v_plus(), f64::INFINITY),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MatrixRange::RangeI => "I",
            MatrixRange::RangeII => "II",
            MatrixRange::RangeIII => "III",
        }
    }
}

/// Physical energy zone used for reporting resonances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Zone {
    /// `m < E < V- - m`
    LowerKlein,
    /// `V- - m < E < V- + m`, the floor gap.
    GapLower,
    /// `V- + m < E < V+ - m`
    HigherKlein,
    /// `V+ - m < E < V+ + m`, the barrier-top band.
    Conventional,
    /// `E > V+ + m`
    AboveBarrier,
}

impl Zone {
    /// Ordered by increasing energy.
    pub const ALL: [Zone; 5] = [
        Zone::LowerKlein,
        Zone::GapLower,
        Zone::HigherKlein,
        Zone::Conventional,
        Zone::AboveBarrier,
    ];

    pub fn bounds(self, cfg: &PotentialConfig) -> (f64, f64) {
        let m = cfg.mass();
        let (vp, vm) = (cfg.v_plus(), cfg.v_minus());
        match self {
            Zone::LowerKlein => (m, vm - m),
            Zone::GapLower => (vm - m, vm + m),
            Zone::HigherKlein => (vm + m, vp - m),
            Zone::Conventional => (vp - m, vp + m),
            Zone::AboveBarrier => (vp + m, f64::INFINITY),
        }
    }

    /// Width of the zone; infinite for [`Zone::AboveBarrier`].
    pub fn width(self, cfg: &PotentialConfig) -> f64 {
        let (lo, hi) = self.bounds(cfg);
        hi - lo
    }

    pub fn name(self) -> &'static str {
        match self {
            Zone::LowerKlein => "lower-klein",
            Zone::GapLower => "gap-lower",
            Zone::HigherKlein => "higher-klein",
            Zone::Conventional => "conventional",
            Zone::AboveBarrier => "above-barrier",
        }
    }

    pub fn contains(self, energy: f64, cfg: &PotentialConfig) -> bool {
        let (lo, hi) = self.bounds(cfg);
        energy > lo && energy < hi
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Zone {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Zone::ALL
            .into_iter()
            .find(|z| z.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown zone '{s}'")))
    }
}

/// Energies every classification boundary sits on, ascending:
/// `m, V- - m, V-, V- + m, V+ - m, V+, V+ + m`.
pub fn boundary_energies(cfg: &PotentialConfig) -> [f64; 7] {
    let m = cfg.mass();
    let (vp, vm) = (cfg.v_plus(), cfg.v_minus());
    [m, vm - m, vm, vm + m, vp - m, vp, vp + m]
}

/// Energies at which some wave vector vanishes or an energy parameter
/// diverges: `{m, V- - m, V- + m, V+ - m, V+ + m}`, ascending.
pub fn singular_energies(cfg: &PotentialConfig) -> Vec<f64> {
    let m = cfg.mass();
    let (vp, vm) = (cfg.v_plus(), cfg.v_minus());
    vec![m, vm - m, vm + m, vp - m, vp + m]
}

/// Matrix range and physical zone of an energy.
pub fn classify(energy: f64, cfg: &PotentialConfig) -> Result<(MatrixRange, Zone)> {
    let tol = cfg.singular_tolerance();
    if !energy.is_finite() {
        return Err(Error::InvalidArgument(format!("energy must be finite (E = {energy})")));
    }
    if energy < cfg.mass() - tol {
        return Err(Error::BelowThreshold { energy, mass: cfg.mass() });
    }
    if let Some(&boundary) = boundary_energies(cfg).iter().find(|&&b| (energy - b).abs() < tol) {
        return Err(Error::BoundaryEnergy { energy, boundary });
    }

    let range = if energy < cfg.v_minus() {
        MatrixRange::RangeI
    } else if energy < cfg.v_plus() {
        MatrixRange::RangeII
    } else {
        MatrixRange::RangeIII
    };
    let zone = Zone::ALL
        .into_iter()
        .find(|z| z.contains(energy, cfg))
        .expect("zones partition (m, inf) away from their boundaries");
    Ok((range, zone))
}
