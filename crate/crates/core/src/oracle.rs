//! Independent check on the transfer matrices: the scattering state is
//! built directly by matching plane-wave solutions at the four boundaries
//! and solving the resulting dense linear system.
//!
//! In every region the general solution is written as
//! `c1 u(k) e^{k x} + c2 u(-k) e^{-k x}` with the unnormalised spinor
//! `u(k) = (1, k / (m + E - U))`, which follows from the first-order
//! relation between the two spinor components. This basis differs from the
//! normalised branch-dependent one behind the transfer matrices; `T` and
//! `R` do not depend on the choice.

use num_complex::Complex64;

use crate::config::{PotentialConfig, RegionId};
use crate::error::{Error, Result};
use crate::kinematics::wave_vector;

const UNKNOWNS: usize = 8;
const RESIDUAL_LIMIT: f64 = 1e-10;

/// Region sequence from left to right.
const REGIONS: [RegionId; 5] =
    [RegionId::Zero, RegionId::Plus, RegionId::Minus, RegionId::Plus, RegionId::Zero];

/// Matched amplitudes of the scattering state with `A1 = 1`, `B5 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSet {
    pub energy: f64,
    /// Right-moving amplitudes `A1..A5`.
    pub a: [Complex64; 5],
    /// Left-moving amplitudes `B1..B5`.
    pub b: [Complex64; 5],
    /// Relative residual `|Ax - b| / |b|` of the linear solve.
    pub residual: f64,
    kappa: [Complex64; 5],
    coupling: [Complex64; 5],
    boundaries: [f64; 4],
}

/// Both spinor components at one position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorSample {
    pub x: f64,
    pub psi_plus: Complex64,
    pub psi_minus: Complex64,
}

impl SpinorSample {
    pub fn density(&self) -> f64 {
        self.psi_plus.norm_sqr() + self.psi_minus.norm_sqr()
    }
}

impl AmplitudeSet {
    pub fn transmission(&self) -> Complex64 {
        self.a[4]
    }

    pub fn reflection(&self) -> Complex64 {
        self.b[0]
    }

    /// Boundary positions `-a, -a-, a-, a`.
    pub fn boundaries(&self) -> [f64; 4] {
        self.boundaries
    }

    /// Index (0-based) of the region containing `x`. Boundary points belong
    /// to the inner side.
    pub fn region_of(&self, x: f64) -> usize {
        let [b0, b1, b2, b3] = self.boundaries;
        if x < b0 {
            0
        } else if x < b1 {
            1
        } else if x <= b2 {
            2
        } else if x <= b3 {
            3
        } else {
            4
        }
    }

    /// Evaluates the solution of region `region` (0-based) at `x`, whether
    /// or not `x` lies inside it.
    pub fn spinor_in(&self, region: usize, x: f64) -> SpinorSample {
        let k = self.kappa[region];
        let c = self.coupling[region];
        let fwd = self.a[region] * (k * x).exp();
        let bwd = self.b[region] * (-k * x).exp();
        SpinorSample { x, psi_plus: fwd + bwd, psi_minus: (fwd - bwd) * k * c }
    }

    pub fn spinor_at(&self, x: f64) -> SpinorSample {
        self.spinor_in(self.region_of(x), x)
    }
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
/// `None` if a pivot is negligible relative to the largest entry.
fn solve_dense<const N: usize>(
    mut a: [[Complex64; N]; N],
    mut b: [Complex64; N],
) -> Option<[Complex64; N]> {
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    for col in 0..N {
        let pivot = (col..N).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[pivot][col].norm() <= 1e-15 * scale {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..N {
            let factor = a[row][col] / a[col][col];
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            let pivot_row = a[col];
            for (dst, src) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= factor * src;
            }
            let sub = factor * b[col];
            b[row] -= sub;
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); N];
    for row in (0..N).rev() {
        let tail: Complex64 = (row + 1..N).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Some(x)
}

/// Matches the scattering state across all four boundaries.
pub fn solve_amplitudes(energy: f64, cfg: &PotentialConfig) -> Result<AmplitudeSet> {
    let m = cfg.mass();
    let (a_out, a_in) = (cfg.outer_edge(), cfg.a_minus());
    let boundaries = [-a_out, -a_in, a_in, a_out];

    let mut kappa = [Complex64::new(0.0, 0.0); 5];
    let mut coupling = [Complex64::new(0.0, 0.0); 5];
    for (i, &region) in REGIONS.iter().enumerate() {
        kappa[i] = wave_vector(energy, region, cfg)?;
        coupling[i] = Complex64::new(1.0 / (m + energy - cfg.potential(region)), 0.0);
    }

    // Unknown ordering: B1, A2, B2, A3, B3, A4, B4, A5. Region `r` owns
    // columns 2r - 1 (A) and 2r (B); A1 = 1 and B5 = 0 are eliminated.
    let column = |region: usize, backward: bool| -> Option<usize> {
        match (region, backward) {
            (0, false) | (4, true) => None,
            (r, false) => Some(2 * r - 1),
            (r, true) => Some(2 * r),
        }
    };

    let zero = Complex64::new(0.0, 0.0);
    let mut sys = [[zero; UNKNOWNS]; UNKNOWNS];
    let mut rhs = [zero; UNKNOWNS];
    for (j, &x) in boundaries.iter().enumerate() {
        for (region, sign) in [(j, 1.0), (j + 1, -1.0)] {
            let k = kappa[region];
            for backward in [false, true] {
                let kk = if backward { -k } else { k };
                let wave = (kk * x).exp();
                let entries = [wave, wave * kk * coupling[region]];
                for (comp, value) in entries.into_iter().enumerate() {
                    let row = 2 * j + comp;
                    match column(region, backward) {
                        Some(col) => sys[row][col] += value * sign,
                        // Only the known incident wave (A1 = 1) lands here.
                        None if region == 0 => rhs[row] -= value * sign,
                        None => {}
                    }
                }
            }
        }
    }

    let sol = solve_dense(sys, rhs).ok_or(Error::SingularSystem { energy })?;

    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let applied: Vec<Complex64> =
        sys.iter().map(|row| row.iter().zip(&sol).map(|(a, x)| a * x).sum()).collect();
    let diff: Vec<Complex64> = applied.iter().zip(&rhs).map(|(a, b)| a - b).collect();
    let residual = norm(&diff) / norm(&rhs);
    if !(residual < RESIDUAL_LIMIT) {
        return Err(Error::SingularSystem { energy });
    }

    let mut a = [zero; 5];
    let mut b = [zero; 5];
    a[0] = Complex64::new(1.0, 0.0);
    b[0] = sol[0];
    for r in 1..4 {
        a[r] = sol[2 * r - 1];
        b[r] = sol[2 * r];
    }
    a[4] = sol[7];
    Ok(AmplitudeSet { energy, a, b, residual, kappa, coupling, boundaries })
}

/// Spinor wavefunction of the matched scattering state at sorted positions.
pub fn wavefunction_profile(
    energy: f64,
    cfg: &PotentialConfig,
    xs: &[f64],
) -> Result<Vec<SpinorSample>> {
    if xs.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::InvalidArgument("positions must be sorted ascending".into()));
    }
    let amps = solve_amplitudes(energy, cfg)?;
    Ok(xs.iter().map(|&x| amps.spinor_at(x)).collect())
}
