//! Condensate solutions, vacuum energy, and Casimir forces for a real scalar
//! field in one dimension whose background supports a single unstable mode.
//!
//! Three exactly solvable backgrounds are covered: an attractive delta
//! potential on the line, an interval with a Robin condition on one end and a
//! Dirichlet condition on the other, and a square potential hole on the half
//! line. For each, the crate provides the perturbative bound-state condensate,
//! the exact condensate in Jacobi elliptic form, the renormalized vacuum
//! energy of the fluctuations, and the forces obtained by differentiating
//! those energies with respect to the geometry.

pub mod cli;
pub mod condensate;
pub mod ellipj;
pub mod error;
pub mod forces;
pub mod meanfield;
pub mod models;
pub mod numerics;
pub mod spectrum;

pub use error::{Error, Result};
