use num_complex::Complex64;

use crate::config::{PotentialConfig, RegionId};
use crate::error::{Error, Result};

/// Principal square root of a real number: `sqrt(x)` for `x >= 0`,
/// `i sqrt(-x)` otherwise. Exact zero real part on the negative branch.
pub(crate) fn principal_sqrt(x: f64) -> Complex64 {
    if x >= 0.0 {
        Complex64::new(x.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-x).sqrt())
    }
}

fn check_regular(energy: f64, region: RegionId, cfg: &PotentialConfig) -> Result<f64> {
    let u = cfg.potential(region);
    let m = cfg.mass();
    let tol = cfg.singular_tolerance();
    for singular in [u - m, u + m] {
        if (energy - singular).abs() < tol {
            return Err(Error::SingularEnergy { energy, singular });
        }
    }
    Ok(energy - u)
}

/// `k = sqrt(m^2 - (E - U)^2)`: real (evanescent) inside the gap
/// `|E - U| < m`, positive imaginary (oscillatory) outside it.
pub fn wave_vector(energy: f64, region: RegionId, cfg: &PotentialConfig) -> Result<Complex64> {
    let de = check_regular(energy, region, cfg)?;
    let m = cfg.mass();
    Ok(principal_sqrt(m * m - de * de))
}

/// Energy parameters `(alpha, beta)` with
/// `alpha = sqrt((m - E + U) / (m + E - U))` and
/// `beta = sqrt((m + E - U) / (m - E + U))`.
///
/// On the principal branch `alpha * beta = +1` when the ratio is positive
/// and `-1` when it is negative.
pub fn alpha_beta(
    energy: f64,
    region: RegionId,
    cfg: &PotentialConfig,
) -> Result<(Complex64, Complex64)> {
    let de = check_regular(energy, region, cfg)?;
    let m = cfg.mass();
    let alpha = principal_sqrt((m - de) / (m + de));
    let beta = principal_sqrt((m + de) / (m - de));
    Ok((alpha, beta))
}

/// Wave vector and energy parameters for one region at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub k: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl Kinematics {
    pub fn new(energy: f64, region: RegionId, cfg: &PotentialConfig) -> Result<Self> {
        let k = wave_vector(energy, region, cfg)?;
        let (alpha, beta) = alpha_beta(energy, region, cfg)?;
        Ok(Kinematics { k, alpha, beta })
    }

    /// `true` when the solution in this region is a real exponential.
    pub fn is_evanescent(&self) -> bool {
        self.k.im == 0.0
    }
}
