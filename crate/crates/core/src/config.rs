use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative width of the exclusion window around singular and boundary
/// energies, in units of the mass.
pub const SINGULAR_TOLERANCE: f64 = 1e-9;

/// Double square barrier on an elevated floor.
///
/// ```text
///   V(x) = 0     for |x| >= a_plus + a_minus
///          V+    for a_minus < |x| < a_plus + a_minus
///          V-    for |x| <= a_minus
/// ```
///
/// Construction enforces `m, a+, a- > 0`, `V- > 2m` and `V+ > V- + 2m`; the
/// regime-specific transfer matrices are only valid under that ordering.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct PotentialConfig {
    mass: f64,
    v_plus: f64,
    v_minus: f64,
    a_plus: f64,
    a_minus: f64,
}

#[derive(Serialize, Deserialize)]
struct RawConfig {
    m: f64,
    v_plus: f64,
    v_minus: f64,
    a_plus: f64,
    a_minus: f64,
}

impl TryFrom<RawConfig> for PotentialConfig {
    type Error = Error;

    fn try_from(raw: RawConfig) -> Result<Self> {
        PotentialConfig::new(raw.m, raw.v_plus, raw.v_minus, raw.a_plus, raw.a_minus)
    }
}

impl From<PotentialConfig> for RawConfig {
    fn from(cfg: PotentialConfig) -> Self {
        RawConfig {
            m: cfg.mass,
            v_plus: cfg.v_plus,
            v_minus: cfg.v_minus,
            a_plus: cfg.a_plus,
            a_minus: cfg.a_minus,
        }
    }
}

impl PotentialConfig {
    pub fn new(mass: f64, v_plus: f64, v_minus: f64, a_plus: f64, a_minus: f64) -> Result<Self> {
        let all = [mass, v_plus, v_minus, a_plus, a_minus];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("all parameters must be finite".into()));
        }
        if mass <= 0.0 {
            return Err(Error::InvalidConfig(format!("mass must be positive (m = {mass})")));
        }
        if a_plus <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "barrier width must be positive (a+ = {a_plus})"
            )));
        }
        if a_minus <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "floor half-width must be positive (a- = {a_minus})"
            )));
        }
        if v_minus <= 2.0 * mass {
            return Err(Error::InvalidConfig(format!(
                "floor must satisfy V- > 2m (V- = {v_minus}, 2m = {})",
                2.0 * mass
            )));
        }
        if v_plus <= v_minus + 2.0 * mass {
            return Err(Error::InvalidConfig(format!(
                "barrier must satisfy V+ > V- + 2m (V+ - V- = {}, 2m = {})",
                v_plus - v_minus,
                2.0 * mass
            )));
        }
        Ok(PotentialConfig { mass, v_plus, v_minus, a_plus, a_minus })
    }

    /// The configuration of the reference transmission curve:
    /// `m = 1, V+ = 8, V- = 4, a+ = 3, a- = 2.5`.
    pub fn reference() -> Self {
        PotentialConfig { mass: 1.0, v_plus: 8.0, v_minus: 4.0, a_plus: 3.0, a_minus: 2.5 }
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn v_plus(&self) -> f64 {
        self.v_plus
    }

    pub fn v_minus(&self) -> f64 {
        self.v_minus
    }

    pub fn a_plus(&self) -> f64 {
        self.a_plus
    }

    pub fn a_minus(&self) -> f64 {
        self.a_minus
    }

    /// Position of the outer edges, `a = a+ + a-`.
    pub fn outer_edge(&self) -> f64 {
        self.a_plus + self.a_minus
    }

    /// Absolute exclusion window around singular energies.
    pub fn singular_tolerance(&self) -> f64 {
        SINGULAR_TOLERANCE * self.mass
    }

    pub fn with_a_plus(&self, a_plus: f64) -> Result<Self> {
        Self::new(self.mass, self.v_plus, self.v_minus, a_plus, self.a_minus)
    }

    pub fn with_a_minus(&self, a_minus: f64) -> Result<Self> {
        Self::new(self.mass, self.v_plus, self.v_minus, self.a_plus, a_minus)
    }

    /// Energies scaled by `lambda`, lengths by `1 / lambda`.
    pub fn rescaled(&self, lambda: f64) -> Result<Self> {
        Self::new(
            self.mass * lambda,
            self.v_plus * lambda,
            self.v_minus * lambda,
            self.a_plus / lambda,
            self.a_minus / lambda,
        )
    }

    pub fn potential(&self, region: RegionId) -> f64 {
        match region {
            RegionId::Zero => 0.0,
            RegionId::Plus => self.v_plus,
            RegionId::Minus => self.v_minus,
        }
    }
}

/// Which constant-potential section a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionId {
    /// Outside the structure, `U = 0`.
    Zero,
    /// Inside either barrier, `U = V+`.
    Plus,
    /// On the floor between the barriers, `U = V-`.
    Minus,
}

impl RegionId {
    pub const ALL: [RegionId; 3] = [RegionId::Zero, RegionId::Plus, RegionId::Minus];
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_is_valid() {
        let r = PotentialConfig::reference();
        assert_eq!(PotentialConfig::new(1.0, 8.0, 4.0, 3.0, 2.5).unwrap(), r);
        assert_eq!(r.outer_edge(), 5.5);
    }

    #[test]
    fn rejects_low_floor() {
        let err = PotentialConfig::new(1.0, 8.0, 2.0, 3.0, 2.5).unwrap_err();
        assert!(err.to_string().contains("V- > 2m"), "{err}");
    }

    #[test]
    fn rejects_low_barrier() {
        let err = PotentialConfig::new(1.0, 5.0, 4.0, 3.0, 2.5).unwrap_err();
        assert!(err.to_string().contains("V+ > V- + 2m"), "{err}");
    }

    #[test]
    fn rejects_nonpositive_geometry() {
        assert!(PotentialConfig::new(0.0, 8.0, 4.0, 3.0, 2.5).is_err());
        assert!(PotentialConfig::new(1.0, 8.0, 4.0, 0.0, 2.5).is_err());
        assert!(PotentialConfig::new(1.0, 8.0, 4.0, 3.0, -1.0).is_err());
        assert!(PotentialConfig::new(1.0, f64::NAN, 4.0, 3.0, 2.5).is_err());
    }

    #[test]
    fn potential_lookup() {
        let r = PotentialConfig::reference();
        let values: Vec<f64> = RegionId::ALL.iter().map(|&id| r.potential(id)).collect();
        assert_eq!(values, vec![0.0, 8.0, 4.0]);
    }

    #[test]
    fn json_round_trip_validates() {
        let json = r#"{"m":1,"v_plus":8,"v_minus":4,"a_plus":3,"a_minus":2.5}"#;
        let cfg: PotentialConfig = serde_json::from_str(json).unwrap();
        assert_eq!(cfg, PotentialConfig::reference());
        let bad = r#"{"m":1,"v_plus":5,"v_minus":4,"a_plus":3,"a_minus":2.5}"#;
        assert!(serde_json::from_str::<PotentialConfig>(bad).is_err());
    }
}
