//! Forces on the movable wall of the interval model: minus the derivative of
//! the condensate and vacuum energies with respect to the separation, taken
//! by a Richardson-extrapolated central stencil.

use crate::condensate::{condensate_energy, critical_kappa, robin_thresholds, solve_robin};
use crate::error::{Error, Result};
use crate::meanfield::bound_state;
use crate::models::{ModelConfig, PhysicalParams};
use crate::spectrum::{
    vacuum_energy_renormalized_with, vacuum_energy_subcritical, FluctuationPotential,
    SpectrumOptions,
};

const REL_STEP: f64 = 1e-4;

/// Which condensate profile sources the fluctuation potential when the force
/// includes the vacuum part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Background {
    Exact,
    Approx,
}

/// Force on the wall, split into its condensate and fluctuation parts, with
/// the stencil step and the extrapolation-difference error estimates.
#[derive(Debug, Clone, Copy)]
pub struct ForceReport {
    pub f_cond: f64,
    pub f_fluct: f64,
    pub f_total: f64,
    pub step_used: f64,
    pub f_cond_error: f64,
    pub f_fluct_error: f64,
}

fn interval_of(config: &ModelConfig) -> Result<(f64, f64)> {
    match config {
        ModelConfig::RobinDirichlet { kappa, length } => Ok((*kappa, *length)),
        other => Err(Error::Domain(format!(
            "force needs a movable wall, got {other:?}"
        ))),
    }
}

fn crossed_branch(length: f64, e: Error) -> Error {
    match e {
        Error::KGap(_) | Error::NoCriticalMode(_) | Error::CriticalWithoutCondensate(_) => {
            Error::BranchCrossing(format!(
                "stencil point L = {length} left the solution branch: {e}"
            ))
        }
        other => other,
    }
}

/// Five-point Richardson derivative: F = -E'(L) with the difference between
/// the h and 2h central slopes as the error estimate.
fn force_of<F>(energy: F, length: f64, step: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let ep = energy(length + step)?;
    let em = energy(length - step)?;
    let ep2 = energy(length + 2.0 * step)?;
    let em2 = energy(length - 2.0 * step)?;
    let d1 = (ep - em) / (2.0 * step);
    let d2 = (ep2 - em2) / (4.0 * step);
    Ok((-(4.0 * d1 - d2) / 3.0, (d1 - d2).abs() / 3.0))
}

fn stencil_step(kappa: f64, length: f64, m: f64) -> Result<f64> {
    let mut step = REL_STEP * length;
    if kappa > m {
        let thresholds = robin_thresholds(kappa, m)?;
        let mut dist = (length - thresholds.l0).abs();
        for t in [thresholds.l1, thresholds.l2].into_iter().flatten() {
            dist = dist.min((length - t).abs());
        }
        if dist < 1e-12 * length {
            return Err(Error::BranchCrossing(format!(
                "L = {length} sits on a solution threshold; the force is one-sided there"
            )));
        }
        step = step.min(dist / 5.0);
    }
    Ok(step)
}

/// Force carried by the condensate alone, -dE_cond/dL.
pub fn condensate_force(config: ModelConfig, params: PhysicalParams) -> Result<ForceReport> {
    let (kappa, length) = interval_of(&config)?;
    config.validate()?;
    let step = stencil_step(kappa, length, params.m)?;
    let energy = |l: f64| {
        solve_robin(ModelConfig::RobinDirichlet { kappa, length: l }, params)
            .map(|sol| condensate_energy(&sol))
            .map_err(|e| crossed_branch(l, e))
    };
    let (f_cond, f_cond_error) = force_of(energy, length, step)?;
    Ok(ForceReport {
        f_cond,
        f_fluct: 0.0,
        f_total: f_cond,
        step_used: step,
        f_cond_error,
        f_fluct_error: 0.0,
    })
}

/// Total force on the wall: condensate part plus the renormalized vacuum
/// part. Below threshold (κ < m) the condensate is absent and the vacuum
/// part comes from the closed-form route; above the critical coupling
/// (κ > κ_c(L)) both parts are differentiated over the chosen background.
/// In between the critical mode has nowhere to condense and the force is
/// refused.
pub fn total_force(
    config: ModelConfig,
    params: PhysicalParams,
    background: Background,
) -> Result<ForceReport> {
    total_force_with(config, params, background, &SpectrumOptions::default())
}

pub fn total_force_with(
    config: ModelConfig,
    params: PhysicalParams,
    background: Background,
    opts: &SpectrumOptions,
) -> Result<ForceReport> {
    let (kappa, length) = interval_of(&config)?;
    config.validate()?;
    let m = params.m;
    if kappa < m {
        let step = REL_STEP * length;
        let energy = |l: f64| vacuum_energy_subcritical(params, kappa, l).map(|r| r.e0_ren);
        let (f_fluct, f_fluct_error) = force_of(energy, length, step)?;
        return Ok(ForceReport {
            f_cond: 0.0,
            f_fluct,
            f_total: f_fluct,
            step_used: step,
            f_cond_error: 0.0,
            f_fluct_error,
        });
    }
    if kappa <= critical_kappa(length, m) {
        return Err(Error::NoCriticalMode(format!(
            "kappa = {kappa} lies between m and the critical coupling {}: no \
             condensate forms and the bare vacuum route does not apply",
            critical_kappa(length, m)
        )));
    }
    let step = stencil_step(kappa, length, m)?;
    let cond_energy = |l: f64| {
        solve_robin(ModelConfig::RobinDirichlet { kappa, length: l }, params)
            .map(|sol| condensate_energy(&sol))
            .map_err(|e| crossed_branch(l, e))
    };
    let (f_cond, f_cond_error) = force_of(cond_energy, length, step)?;
    let fluct_energy = |l: f64| {
        let cfg = ModelConfig::RobinDirichlet { kappa, length: l };
        let v = match background {
            Background::Exact => {
                FluctuationPotential::from_condensate(solve_robin(cfg, params)?)?
            }
            Background::Approx => FluctuationPotential::from_bound_state(bound_state(cfg, params)?)?,
        };
        vacuum_energy_renormalized_with(&v, params, kappa, l, opts)
            .map(|r| r.e0_ren)
            .map_err(|e| crossed_branch(l, e))
    };
    let (f_fluct, f_fluct_error) = force_of(fluct_energy, length, step)
        .map_err(|e| crossed_branch(length, e))?;
    Ok(ForceReport {
        f_cond,
        f_fluct,
        f_total: f_cond + f_fluct,
        step_used: step,
        f_cond_error,
        f_fluct_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const M1: PhysicalParams = PhysicalParams { m: 1.0, lambda: 1.0 };

    fn robin(kappa: f64, length: f64) -> ModelConfig {
        ModelConfig::RobinDirichlet { kappa, length }
    }

    #[test]
    fn subcritical_walls_attract_nobody_but_feel_the_vacuum() {
        let report = total_force(robin(0.5, 2.2), M1, Background::Exact).unwrap();
        assert_eq!(report.f_cond, 0.0);
        assert!(report.f_total > 0.0, "subcritical force should push the wall out");
        assert!((report.f_total - 0.007_31).abs() < 2e-5, "F = {}", report.f_total);
        assert!(report.f_fluct_error < 1e-8);
    }

    #[test]
    fn condensate_force_against_an_independent_slope() {
        let report = condensate_force(robin(2.0, 2.5), M1).unwrap();
        let h = 0.5 * report.step_used;
        let e = |l: f64| {
            condensate_energy(&solve_robin(robin(2.0, l), M1).unwrap())
        };
        let slope = (e(2.5 + h) - e(2.5 - h)) / (2.0 * h);
        assert!(
            (report.f_cond + slope).abs() < 10.0 * (report.f_cond_error + 1e-10) + 1e-7,
            "force {} vs slope {}",
            report.f_cond,
            -slope
        );
        assert_eq!(report.f_fluct, 0.0);
    }

    #[test]
    fn forces_are_refused_between_the_thresholds() {
        assert!(matches!(
            total_force(robin(1.01, 2.2), M1, Background::Exact),
            Err(Error::NoCriticalMode(_))
        ));
        // Inside the modulus gap the stencil has no branch to sit on.
        assert!(matches!(
            condensate_force(robin(2.0, 1.3), M1),
            Err(Error::BranchCrossing(_))
        ));
        assert!(condensate_force(ModelConfig::Delta { kappa: 2.0 }, M1).is_err());
    }

    #[test]
    fn critical_total_force_over_the_variational_background() {
        let report = total_force(robin(1.3, 3.0), M1, Background::Approx).unwrap();
        assert!(report.f_cond > 0.0, "condensate part: {}", report.f_cond);
        assert!(report.f_total.is_finite());
        assert!(report.f_cond_error < 1e-6);
        assert!(report.step_used <= 1e-4 * 3.0);
    }
}
