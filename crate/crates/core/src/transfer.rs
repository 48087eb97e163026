//! Boundary transfer matrices and the full-structure matrix `M(E)`.
//!
//! The amplitudes of neighbouring regions are related by
//! `(A_n, B_n)^T = M_n (A_{n+1}, B_{n+1})^T`, with boundaries at
//! `x = -a, -a-, +a-, +a` (`a = a+ + a-`). The explicit form of each `M_n`
//! depends on whether the solution in each region belongs to the positive
//! (`alpha` basis) or negative (`beta` basis) energy branch, which is fixed
//! by the [`MatrixRange`]. The three tables below are kept as written rather
//! than folded into a single branch-generic form.

use num_complex::Complex64;
use crate::config::{PotentialConfig, RegionId};
use crate::error::{Error, Result};
use crate::kinematics::Kinematics;
use crate::matrix::Matrix2x2;
use crate::regime::{classify, MatrixRange, Zone};

/// Exponentials evaluated at the two boundary positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryFactors {
    /// `exp(a k0)`
    pub sigma0: Complex64,
    /// `exp(a k+)`
    pub sigma_plus: Complex64,
    /// `exp(a- k+)`
    pub gamma_plus: Complex64,
    /// `exp(a- k-)`
    pub gamma_minus: Complex64,
}

impl BoundaryFactors {
    pub fn new(kin: &RegionKinematics, cfg: &PotentialConfig) -> Self {
        let a = cfg.outer_edge();
        let am = cfg.a_minus();
        BoundaryFactors {
            sigma0: (kin.zero.k * a).exp(),
            sigma_plus: (kin.plus.k * a).exp(),
            gamma_plus: (kin.plus.k * am).exp(),
            gamma_minus: (kin.minus.k * am).exp(),
        }
    }
}

/// Kinematics of the three distinct potential sections at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionKinematics {
    pub zero: Kinematics,
    pub plus: Kinematics,
    pub minus: Kinematics,
}

impl RegionKinematics {
    pub fn new(energy: f64, cfg: &PotentialConfig) -> Result<Self> {
        Ok(RegionKinematics {
            zero: Kinematics::new(energy, RegionId::Zero, cfg)?,
            plus: Kinematics::new(energy, RegionId::Plus, cfg)?,
            minus: Kinematics::new(energy, RegionId::Minus, cfg)?,
        })
    }
}

fn half(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Matrix2x2 {
    Matrix2x2::new(m11, m12, m21, m22).scale(Complex64::new(0.5, 0.0))
}

/// Outer boundaries for `E < V+`: positive-energy outside, negative-energy
/// waves inside the barrier. Shared by ranges I and II.
fn outer_below_barrier(k: &RegionKinematics, f: &BoundaryFactors) -> (Matrix2x2, Matrix2x2) {
    let (s0, sp) = (f.sigma0, f.sigma_plus);
    let a0 = k.zero.alpha;
    let bp = k.plus.beta;

    let m1 = half(
        s0 * sp * (a0.inv() - bp),
        s0 / sp * (a0.inv() + bp),
        -(sp / s0) * (a0.inv() + bp),
        (s0 * sp).inv() * (bp - a0.inv()),
    );
    let m4 = half(
        s0 * sp * (a0 - bp.inv()),
        -(sp / s0) * (a0 + bp.inv()),
        s0 / sp * (a0 + bp.inv()),
        (s0 * sp).inv() * (bp.inv() - a0),
    );
    (m1, m4)
}

/// `m < E < V-`: negative-energy branch in both the barriers and the floor.
fn range_one(k: &RegionKinematics, f: &BoundaryFactors) -> [Matrix2x2; 4] {
    let one = Complex64::new(1.0, 0.0);
    let (gp, gm) = (f.gamma_plus, f.gamma_minus);
    let (bp, bm) = (k.plus.beta, k.minus.beta);
    let (m1, m4) = outer_below_barrier(k, f);

    let m2 = half(
        gm / gp * (one + bm / bp),
        (gp * gm).inv() * (one - bm / bp),
        gp * gm * (one - bm / bp),
        gp / gm * (one + bm / bp),
    );
    let m3 = half(
        gm / gp * (one + bp / bm),
        gp * gm * (one - bp / bm),
        (gp * gm).inv() * (one - bp / bm),
        gp / gm * (one + bp / bm),
    );
    [m1, m2, m3, m4]
}

/// `V- < E < V+`: negative-energy branch in the barriers, positive on the floor.
fn range_two(k: &RegionKinematics, f: &BoundaryFactors) -> [Matrix2x2; 4] {
    let (gp, gm) = (f.gamma_plus, f.gamma_minus);
    let am = k.minus.alpha;
    let bp = k.plus.beta;
    let (m1, m4) = outer_below_barrier(k, f);

    let m2 = half(
        (gp * gm).inv() * (am - bp.inv()),
        -(gm / gp) * (am + bp.inv()),
        gp / gm * (am + bp.inv()),
        gp * gm * (bp.inv() - am),
    );
    let m3 = half(
        (gp * gm).inv() * (am.inv() - bp),
        gp / gm * (am.inv() + bp),
        -(gm / gp) * (am.inv() + bp),
        gp * gm * (bp - am.inv()),
    );
    [m1, m2, m3, m4]
}

/// `E > V+`: positive-energy branch everywhere.
fn range_three(k: &RegionKinematics, f: &BoundaryFactors) -> [Matrix2x2; 4] {
    let one = Complex64::new(1.0, 0.0);
    let (s0, sp) = (f.sigma0, f.sigma_plus);
    let (gp, gm) = (f.gamma_plus, f.gamma_minus);
    let (a0, ap, am) = (k.zero.alpha, k.plus.alpha, k.minus.alpha);

    let m1 = half(
        s0 / sp * (one + ap / a0),
        s0 * sp * (one - ap / a0),
        (s0 * sp).inv() * (one - ap / a0),
        sp / s0 * (one + ap / a0),
    );
    let m2 = half(
        gp / gm * (one + am / ap),
        gp * gm * (one - am / ap),
        (gp * gm).inv() * (one - am / ap),
        gm / gp * (one + am / ap),
    );
    let m3 = half(
        gp / gm * (one + ap / am),
        (gp * gm).inv() * (one - ap / am),
        gp * gm * (one - ap / am),
        gm / gp * (one + ap / am),
    );
    let m4 = half(
        s0 / sp * (one + a0 / ap),
        (s0 * sp).inv() * (one - a0 / ap),
        s0 * sp * (one - a0 / ap),
        sp / s0 * (one + a0 / ap),
    );
    [m1, m2, m3, m4]
}

/// The four boundary matrices `M1..M4` for the range containing `energy`.
pub fn factor_matrices(energy: f64, cfg: &PotentialConfig) -> Result<[Matrix2x2; 4]> {
    let (range, _) = classify(energy, cfg)?;
    let kin = RegionKinematics::new(energy, cfg)?;
    let factors = BoundaryFactors::new(&kin, cfg);
    let matrices = match range {
        MatrixRange::RangeI => range_one(&kin, &factors),
        MatrixRange::RangeII => range_two(&kin, &factors),
        MatrixRange::RangeIII => range_three(&kin, &factors),
    };
    if matrices.iter().all(Matrix2x2::is_finite) {
        Ok(matrices)
    } else {
        Err(Error::NumericalOverflow { energy })
    }
}

/// Closed-form determinants of `M1..M4`. Their product is one in every range.
pub fn factor_determinants(energy: f64, cfg: &PotentialConfig) -> Result<[Complex64; 4]> {
    let (range, _) = classify(energy, cfg)?;
    let k = RegionKinematics::new(energy, cfg)?;
    let (a0, ap, am) = (k.zero.alpha, k.plus.alpha, k.minus.alpha);
    let (bp, bm) = (k.plus.beta, k.minus.beta);
    Ok(match range {
        MatrixRange::RangeI => [bp / a0, bm / bp, bp / bm, a0 / bp],
        MatrixRange::RangeII => [bp / a0, am / bp, bp / am, a0 / bp],
        MatrixRange::RangeIII => [ap / a0, am / ap, ap / am, a0 / ap],
    })
}

/// `M(E) = M1 M2 M3 M4`.
pub fn full_matrix(energy: f64, cfg: &PotentialConfig) -> Result<Matrix2x2> {
    let [m1, m2, m3, m4] = factor_matrices(energy, cfg)?;
    let m = m1 * m2 * m3 * m4;
    if m.is_finite() {
        Ok(m)
    } else {
        Err(Error::NumericalOverflow { energy })
    }
}

/// Transmission and reflection at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    pub energy: f64,
    pub t: Complex64,
    pub r: Complex64,
    pub t2: f64,
    pub r2: f64,
    pub range: MatrixRange,
    pub zone: Zone,
}

impl ScatteringResult {
    /// Builds the result from a full transfer matrix: `T = 1/M11`,
    /// `R = M21/M11`.
    pub fn from_matrix(energy: f64, m: &Matrix2x2, cfg: &PotentialConfig) -> Result<Self> {
        let (range, zone) = classify(energy, cfg)?;
        if m.m11.norm() < 1e-300 {
            return Err(Error::DegenerateMatrix { energy });
        }
        let t = m.m11.inv();
        let r = m.m21 * t;
        Ok(ScatteringResult { energy, t, r, t2: t.norm_sqr(), r2: r.norm_sqr(), range, zone })
    }
}

pub fn scatter(energy: f64, cfg: &PotentialConfig) -> Result<ScatteringResult> {
    let m = full_matrix(energy, cfg)?;
    ScatteringResult::from_matrix(energy, &m, cfg)
}
