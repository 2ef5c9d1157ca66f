//! Error type shared across the crate.

use thiserror::Error;

use crate::condensate::KGapDiagnostics;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the range where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The argument of a Jacobi quotient sits too close to a pole.
    #[error("argument {z} lies within {distance:e} of the pole at {pole}")]
    PoleProximity { z: f64, pole: f64, distance: f64 },

    /// The coupling is below the threshold where a negative mode appears.
    #[error("no critical mode: {0}")]
    NoCriticalMode(String),

    /// No elliptic modulus in (0,1) gives an interior-pole-free solution.
    #[error("{0}")]
    KGap(KGapDiagnostics),

    /// A root search exhausted its bracket without finding a sign change.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// The operator underlying a Green's function has a (near-)zero mode.
    #[error("singular operator: homogeneous solutions have Wronskian {wronskian:e}")]
    SingularOperator { wronskian: f64 },

    /// The subcritical mode function is evaluated at its pole xi = kappa.
    #[error("mode function singular at xi = kappa = {0}")]
    Singularity(f64),

    /// A vacuum-energy formula valid only below threshold was asked for
    /// critical parameters.
    #[error("critical parameters without a condensate: {0}")]
    CriticalWithoutCondensate(String),

    /// The fluctuation operator still has negative eigenvalues, so the
    /// frequency integral for the vacuum energy does not exist.
    #[error("spectrum has imaginary frequencies: mode function vanishes at xi = {zeros:?}")]
    UnstableSpectrum { zeros: Vec<f64> },

    /// A finite-difference stencil straddles a solution-branch boundary.
    #[error("branch change inside the difference stencil: {0}")]
    BranchCrossing(String),

    /// The adaptive integrator could not meet its tolerance.
    #[error("integrator failure: {0}")]
    OdeFailure(String),

    /// Reading or writing an output file failed.
    #[error("i/o error: {0}")]
    Io(String),

    /// A configuration file could not be parsed.
    #[error("config error: {0}")]
    Config(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
