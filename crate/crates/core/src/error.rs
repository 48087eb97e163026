use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("energy {energy} is within tolerance of the singular energy {singular}")]
    SingularEnergy { energy: f64, singular: f64 },

    #[error("energy {energy} is within tolerance of the boundary energy {boundary}")]
    BoundaryEnergy { energy: f64, boundary: f64 },

    #[error("energy {energy} is below the scattering threshold E = m = {mass}")]
    BelowThreshold { energy: f64, mass: f64 },

    #[error("transfer matrix element M11 vanished at E = {energy}")]
    DegenerateMatrix { energy: f64 },

    #[error("non-finite transfer matrix entry at E = {energy}")]
    NumericalOverflow { energy: f64 },

    #[error("boundary-matching system is singular at E = {energy}")]
    SingularSystem { energy: f64 },

    #[error("refinement near E = {energy} left residual |M21| = {residual:e}")]
    RefinementFailed { energy: f64, residual: f64 },

    #[error("root is not bracketed on [{lo}, {hi}]")]
    NotBracketed { lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
