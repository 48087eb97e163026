//! Scattering of a 1+1 dimensional Dirac particle by a double square barrier
//! whose in-between floor is itself raised above `2m`.
//!
//! The engine is organised bottom-up:
//!
//! * [`config`], [`regime`] and [`kinematics`] hold the physical parameters,
//!   the energy range / zone taxonomy and the per-region wave vectors.
//! * [`transfer`] builds the four boundary transfer matrices for each energy
//!   range and extracts the transmission and reflection amplitudes.
//! * [`resonance`] locates full-transmission energies (`M21(E) = 0`).
//! * [`oracle`] solves the same problem by direct boundary matching, used to
//!   cross-check the transfer matrices.
//! * [`verify`] runs the unitarity / symmetry / oracle suite.
//! * [`cli`] is the command-line front end.
//!
//! All quantities are in natural units (`hbar = c = 1`).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod format;
pub mod kinematics;
pub mod matrix;
pub mod oracle;
pub mod regime;
pub mod resonance;
pub mod roots;
pub mod transfer;
pub mod verify;

pub use config::{PotentialConfig, RegionId};
pub use error::{Error, Result};
pub use kinematics::{alpha_beta, wave_vector, Kinematics};
pub use matrix::Matrix2x2;
pub use regime::{classify, singular_energies, MatrixRange, Zone};
pub use resonance::{
    estimate_fwhm, find_above_barrier, find_resonances, Resonance, SearchSettings,
};
pub use transfer::{factor_matrices, full_matrix, scatter, ScatteringResult};

pub use num_complex::Complex64;
