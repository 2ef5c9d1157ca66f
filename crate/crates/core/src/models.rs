//! Model definitions: physical parameters, the three background geometries,
//! and the boundary or matching data each one imposes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mass and self-coupling of the field; both strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub m: f64,
    pub lambda: f64,
}

impl PhysicalParams {
    pub fn new(m: f64, lambda: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::Domain(format!("mass must be positive, got {m}")));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::Domain(format!(
                "coupling must be positive, got {lambda}"
            )));
        }
        Ok(Self { m, lambda })
    }
}

/// One of the three solvable backgrounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelConfig {
    /// Attractive delta potential -2κδ(x) on the whole line.
    Delta { kappa: f64 },
    /// Interval [0, L] with φ'(0) = -κφ(0) at the left end and φ(L) = 0 at
    /// the right end.
    RobinDirichlet { kappa: f64, length: f64 },
    /// Square hole of depth U₀ on 0 < x < R, Dirichlet wall at x = 0, free
    /// half line beyond.
    PotentialHole { depth: f64, width: f64 },
}

/// Spatial support of a model's field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpatialDomain {
    Line,
    Interval(f64),
    HalfLine,
}

/// What a model imposes at one point of its domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryKind {
    /// Derivative jump φ'(x⁺) - φ'(x⁻) = -2κφ(x) across a delta potential.
    MatchingJump { kappa: f64 },
    /// Robin condition φ'(x) = -κφ(x).
    Robin { kappa: f64 },
    /// Dirichlet condition φ(x) = 0.
    Dirichlet,
    /// Continuity of φ and φ' across a potential step.
    Continuity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCondition {
    pub location: f64,
    pub kind: BoundaryKind,
}

impl ModelConfig {
    /// Checks positivity of the geometric data; coupling-strength thresholds
    /// are left to the solvers.
    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        match *self {
            ModelConfig::Delta { kappa } => {
                if !ok(kappa) {
                    return Err(Error::Domain(format!(
                        "delta strength must be positive, got {kappa}"
                    )));
                }
            }
            ModelConfig::RobinDirichlet { kappa, length } => {
                if !ok(kappa) {
                    return Err(Error::Domain(format!(
                        "robin coefficient must be positive, got {kappa}"
                    )));
                }
                if !ok(length) {
                    return Err(Error::Domain(format!(
                        "interval length must be positive, got {length}"
                    )));
                }
            }
            ModelConfig::PotentialHole { depth, width } => {
                if !ok(depth) {
                    return Err(Error::Domain(format!(
                        "hole depth must be positive, got {depth}"
                    )));
                }
                if !ok(width) {
                    return Err(Error::Domain(format!(
                        "hole width must be positive, got {width}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> SpatialDomain {
        match *self {
            ModelConfig::Delta { .. } => SpatialDomain::Line,
            ModelConfig::RobinDirichlet { length, .. } => SpatialDomain::Interval(length),
            ModelConfig::PotentialHole { .. } => SpatialDomain::HalfLine,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        match self.domain() {
            SpatialDomain::Line => x.is_finite(),
            SpatialDomain::Interval(l) => (0.0..=l).contains(&x),
            SpatialDomain::HalfLine => x.is_finite() && x >= 0.0,
        }
    }

    pub fn boundary_conditions(&self) -> Vec<BoundaryCondition> {
        match *self {
            ModelConfig::Delta { kappa } => vec![BoundaryCondition {
                location: 0.0,
                kind: BoundaryKind::MatchingJump { kappa },
            }],
            ModelConfig::RobinDirichlet { kappa, length } => vec![
                BoundaryCondition {
                    location: 0.0,
                    kind: BoundaryKind::Robin { kappa },
                },
                BoundaryCondition {
                    location: length,
                    kind: BoundaryKind::Dirichlet,
                },
            ],
            ModelConfig::PotentialHole { width, .. } => vec![
                BoundaryCondition {
                    location: 0.0,
                    kind: BoundaryKind::Dirichlet,
                },
                BoundaryCondition {
                    location: width,
                    kind: BoundaryKind::Continuity,
                },
            ],
        }
    }
}

/// The background potential (the delta spike itself excluded) at `x`, which
/// must lie in the model's domain.
pub fn potential_eval(config: ModelConfig, x: f64) -> Result<f64> {
    if !config.contains(x) {
        return Err(Error::Domain(format!(
            "x = {x} lies outside the domain of {config:?}"
        )));
    }
    Ok(match config {
        ModelConfig::Delta { .. } | ModelConfig::RobinDirichlet { .. } => 0.0,
        ModelConfig::PotentialHole { depth, width } => {
            if x > 0.0 && x < width {
                -depth
            } else {
                0.0
            }
        }
    })
}
