//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by the model operations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A precondition on a physical quantity was violated.
    #[error("domain: {0}")]
    Domain(String),

    /// A finite-difference grid cannot resolve the wave it samples.
    #[error("grid too coarse: step {step} exceeds the resolvable limit {limit} (wavelength {wavelength})")]
    GridTooCoarse {
        step: f64,
        limit: f64,
        wavelength: f64,
    },

    /// A potential step at least as large as the total energy reflects every
    /// ensemble member.
    #[error("total reflection: potential {potential} >= total energy {total_energy}")]
    TotalReflection { potential: f64, total_energy: f64 },

    /// The ensemble has no support left in k-space.
    #[error("empty ensemble: no k-support remains")]
    EmptySupport,

    /// A normalization integral evaluated to zero.
    #[error("zero norm: wavefunction vanishes on the requested domain")]
    ZeroNorm,

    /// A configuration file could not be parsed.
    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
