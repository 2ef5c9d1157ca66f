//! Exact condensate solutions of the stationary Gross–Pitaevskii equation
//! φ'' = (m² + V)φ + λφ³ for the three backgrounds, their energies, and the
//! thresholds in parameter space where they exist.

use serde::Serialize;

use crate::ellipj::{self, EllipticModulus};
use crate::error::{Error, Result};
use crate::models::{ModelConfig, PhysicalParams, potential_eval};
use crate::numerics::{quad, roots};

const SCAN_POINTS: usize = 2000;
const ROOT_XTOL: f64 = 1e-12;

/// Robin coupling at which the interval first develops an unstable mode,
/// κ_c = m/tanh(mL).
pub fn critical_kappa(length: f64, m: f64) -> f64 {
    m / (m * length).tanh()
}

/// The interval lengths separating the condensate branches at fixed κ.
///
/// Below `l0` there is no unstable mode. Between `l0` and `l1` the condensate
/// reaches the modulus interval (0, 1); between `l1` and `l2` every matching
/// root carries an interior pole (the gap); beyond `l2` a pole-free root
/// exists again. `l1` and `l2` require κ ≥ √2·m and coincide there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobinThresholds {
    pub l0: f64,
    pub l1: Option<f64>,
    pub l2: Option<f64>,
}

pub fn robin_thresholds(kappa: f64, m: f64) -> Result<RobinThresholds> {
    if !(kappa.is_finite() && kappa > m) {
        return Err(Error::Domain(format!(
            "thresholds need kappa > m, got kappa = {kappa}, m = {m}"
        )));
    }
    let l0 = (m / kappa).atanh() / m;
    let ratio = std::f64::consts::SQRT_2 * m / kappa;
    let (l1, l2) = if ratio <= 1.0 {
        let angle = ratio.asin();
        (
            Some(angle / (std::f64::consts::SQRT_2 * m)),
            Some((std::f64::consts::PI - angle) / (std::f64::consts::SQRT_2 * m)),
        )
    } else {
        (None, None)
    };
    Ok(RobinThresholds { l0, l1, l2 })
}

/// Hole depth at which the first unstable mode appears: U₀c = m² + p₀² with
/// tan(p₀R) = -p₀/m on the branch p₀R ∈ (π/2, π).
pub fn hole_threshold(width: f64, m: f64) -> Result<f64> {
    if !(width.is_finite() && width > 0.0 && m.is_finite() && m > 0.0) {
        return Err(Error::Domain(format!(
            "hole threshold needs positive width and mass, got R = {width}, m = {m}"
        )));
    }
    let f = |p: f64| (p * width).tan() + p / m;
    let lo = (std::f64::consts::FRAC_PI_2 + 1e-9) / width;
    let hi = std::f64::consts::PI * (1.0 - 1e-12) / width;
    let p0 = roots::bisect(&f, lo, hi, 1e-14)?;
    Ok(m * m + p0 * p0)
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    /// √(2/λ)·m/sinh(m(|x|+x₁)) on the line.
    DeltaTail { x1: f64 },
    /// √(2/λ)·βk·sc(β(L-x), k') on the interval.
    RobinElliptic { k: EllipticModulus, beta: f64 },
    /// √(2/λ)·γk·sn(γx, k) inside the hole, √(2/λ)·m/sinh(m(x+x₁)) beyond.
    HoleElliptic { k: EllipticModulus, gamma: f64, x1: f64 },
}

/// An exact condensate profile together with the model it solves.
#[derive(Debug, Clone, Copy)]
pub struct CondensateSolution {
    pub model: ModelConfig,
    pub params: PhysicalParams,
    shape: Shape,
}

impl CondensateSolution {
    /// The elliptic modulus parametrizing the solution, absent for the delta
    /// model whose profile is the degenerate k = 1 shape.
    pub fn modulus(&self) -> Option<f64> {
        match self.shape {
            Shape::DeltaTail { .. } => None,
            Shape::RobinElliptic { k, .. } => Some(k.k()),
            Shape::HoleElliptic { k, .. } => Some(k.k()),
        }
    }

    /// The offset x₁ of the hyperbolic tail, where one exists.
    pub fn shift(&self) -> Option<f64> {
        match self.shape {
            Shape::DeltaTail { x1 } => Some(x1),
            Shape::RobinElliptic { .. } => None,
            Shape::HoleElliptic { x1, .. } => Some(x1),
        }
    }

    pub fn phi(&self, x: f64) -> f64 {
        let amp = (2.0 / self.params.lambda).sqrt();
        let m = self.params.m;
        match self.shape {
            Shape::DeltaTail { x1 } => amp * m / (m * (x.abs() + x1)).sinh(),
            Shape::RobinElliptic { k, beta } => {
                let length = match self.model {
                    ModelConfig::RobinDirichlet { length, .. } => length,
                    _ => unreachable!(),
                };
                let t = ellipj::jacobi_triple(beta * (length - x), k.complement());
                amp * beta * k.k() * t.sn / t.cn
            }
            Shape::HoleElliptic { k, gamma, x1 } => {
                let width = match self.model {
                    ModelConfig::PotentialHole { width, .. } => width,
                    _ => unreachable!(),
                };
                if x <= width {
                    let t = ellipj::jacobi_triple(gamma * x, k);
                    amp * gamma * k.k() * t.sn
                } else {
                    amp * m / (m * (x + x1)).sinh()
                }
            }
        }
    }

    pub fn phi_prime(&self, x: f64) -> f64 {
        let amp = (2.0 / self.params.lambda).sqrt();
        let m = self.params.m;
        match self.shape {
            Shape::DeltaTail { x1 } => {
                let u = m * (x.abs() + x1);
                let slope = -amp * m * m * u.cosh() / (u.sinh() * u.sinh());
                if x < 0.0 {
                    -slope
                } else {
                    slope
                }
            }
            Shape::RobinElliptic { k, beta } => {
                let length = match self.model {
                    ModelConfig::RobinDirichlet { length, .. } => length,
                    _ => unreachable!(),
                };
                let t = ellipj::jacobi_triple(beta * (length - x), k.complement());
                -amp * beta * beta * k.k() * t.dn / (t.cn * t.cn)
            }
            Shape::HoleElliptic { k, gamma, x1 } => {
                let width = match self.model {
                    ModelConfig::PotentialHole { width, .. } => width,
                    _ => unreachable!(),
                };
                if x <= width {
                    let t = ellipj::jacobi_triple(gamma * x, k);
                    amp * gamma * gamma * k.k() * t.cn * t.dn
                } else {
                    let u = m * (x + x1);
                    -amp * m * m * u.cosh() / (u.sinh() * u.sinh())
                }
            }
        }
    }
}

/// A matching root discarded because the corresponding profile has a pole
/// inside the interval.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RejectedRoot {
    pub k: f64,
    /// Position of the innermost profile pole in (0, L).
    pub pole_location: f64,
}

/// What the modulus scan saw when no admissible root exists.
#[derive(Debug, Clone, Serialize)]
pub struct KGapDiagnostics {
    pub kappa: f64,
    pub length: f64,
    pub scanned_points: usize,
    pub rejected: Vec<RejectedRoot>,
}

impl std::fmt::Display for KGapDiagnostics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "no pole-free modulus in (0, 1) for kappa = {}, L = {}: scanned {} points",
            self.kappa, self.length, self.scanned_points
        )?;
        if self.rejected.is_empty() {
            write!(f, ", no matching roots at all")
        } else {
            write!(f, ", rejected roots with interior poles:")?;
            for r in &self.rejected {
                write!(f, " k = {:.6} (pole at x = {:.6})", r.k, r.pole_location)?;
            }
            Ok(())
        }
    }
}

/// The condensate of the delta model, with tail offset x₁ = artanh(m/κ)/m.
pub fn solve_delta(config: ModelConfig, params: PhysicalParams) -> Result<CondensateSolution> {
    config.validate()?;
    let kappa = match config {
        ModelConfig::Delta { kappa } => kappa,
        _ => {
            return Err(Error::Domain(format!(
                "solve_delta expects the delta model, got {config:?}"
            )))
        }
    };
    let m = params.m;
    if kappa <= m {
        return Err(Error::NoCriticalMode(format!(
            "delta strength kappa = {kappa} does not exceed the mass m = {m}"
        )));
    }
    let x1 = (m / kappa).atanh() / m;
    Ok(CondensateSolution {
        model: config,
        params,
        shape: Shape::DeltaTail { x1 },
    })
}

/// Mismatch of the Robin condition at x = 0 for the elliptic profile with
/// modulus `k`, with the common amplitude divided out:
/// -κ·sc(βL, k') + β·dn(βL, k')/cn²(βL, k'), β = m/√(1+k²).
///
/// At k = 0 this reduces to the threshold condition -κ·sinh(mL) + m·cosh(mL).
pub fn robin_matching_residual(
    k: EllipticModulus,
    config: ModelConfig,
    params: PhysicalParams,
) -> Result<f64> {
    let (kappa, length) = match config {
        ModelConfig::RobinDirichlet { kappa, length } => (kappa, length),
        _ => {
            return Err(Error::Domain(format!(
                "matching residual is defined for the interval model, got {config:?}"
            )))
        }
    };
    let m = params.m;
    let beta = m / (1.0 + k.k() * k.k()).sqrt();
    let arg = beta * length;
    let comp = k.complement();
    let sc = ellipj::jacobi_sc(arg, comp)?;
    let t = ellipj::jacobi_triple(arg, comp);
    Ok(-kappa * sc + beta * t.dn / (t.cn * t.cn))
}

struct RobinScan {
    roots: Vec<f64>,
    rejected: Vec<RejectedRoot>,
}

fn scan_robin_moduli(kappa: f64, length: f64, params: PhysicalParams) -> RobinScan {
    let config = ModelConfig::RobinDirichlet { kappa, length };
    let m = params.m;
    let beta_of = |k: f64| m / (1.0 + k * k).sqrt();
    let pole_free = |k: f64| {
        let mo = EllipticModulus::new(k).unwrap();
        match ellipj::complete_k(mo.complement()) {
            Ok(quarter) => beta_of(k) * length < quarter - 1e-12,
            Err(_) => true,
        }
    };
    let residual = |k: f64| {
        EllipticModulus::new(k)
            .and_then(|mo| robin_matching_residual(mo, config, params))
            .unwrap_or(f64::NAN)
    };
    let mut scan = RobinScan {
        roots: Vec::new(),
        rejected: Vec::new(),
    };
    let mut prev: Option<(f64, f64, bool)> = None;
    for i in 0..=SCAN_POINTS {
        let k = i as f64 / SCAN_POINTS as f64;
        let val = residual(k);
        if !val.is_finite() {
            prev = None;
            continue;
        }
        let free = pole_free(k);
        if let Some((kp, vp, fp)) = prev {
            if fp == free && vp.signum() != val.signum() {
                if let Ok(root) = roots::bisect(&residual, kp, k, ROOT_XTOL) {
                    if free {
                        scan.roots.push(root);
                    } else {
                        let mo = EllipticModulus::new(root).unwrap();
                        let quarter = ellipj::complete_k(mo.complement()).unwrap_or(f64::INFINITY);
                        scan.rejected.push(RejectedRoot {
                            k: root,
                            pole_location: length - quarter / beta_of(root),
                        });
                    }
                }
            }
        }
        prev = Some((k, val, free));
    }
    scan
}

/// The pole-free elliptic condensate on the interval. When several matching
/// roots survive the pole test, the smallest modulus is returned; when none
/// does, the failure carries the scan diagnostics.
pub fn solve_robin(config: ModelConfig, params: PhysicalParams) -> Result<CondensateSolution> {
    config.validate()?;
    let (kappa, length) = match config {
        ModelConfig::RobinDirichlet { kappa, length } => (kappa, length),
        _ => {
            return Err(Error::Domain(format!(
                "solve_robin expects the interval model, got {config:?}"
            )))
        }
    };
    let m = params.m;
    let kappa_c = critical_kappa(length, m);
    if kappa <= kappa_c {
        return Err(Error::NoCriticalMode(format!(
            "kappa = {kappa} does not exceed kappa_c = {kappa_c} at L = {length}"
        )));
    }
    let scan = scan_robin_moduli(kappa, length, params);
    match scan.roots.first() {
        Some(&k) => Ok(CondensateSolution {
            model: config,
            params,
            shape: Shape::RobinElliptic {
                k: EllipticModulus::new(k)?,
                beta: m / (1.0 + k * k).sqrt(),
            },
        }),
        None => Err(Error::KGap(KGapDiagnostics {
            kappa,
            length,
            scanned_points: SCAN_POINTS + 1,
            rejected: scan.rejected,
        })),
    }
}

/// The condensate of the hole model: elliptic sn inside the hole matched to
/// a hyperbolic tail outside.
pub fn solve_hole(config: ModelConfig, params: PhysicalParams) -> Result<CondensateSolution> {
    config.validate()?;
    let (depth, width) = match config {
        ModelConfig::PotentialHole { depth, width } => (depth, width),
        _ => {
            return Err(Error::Domain(format!(
                "solve_hole expects the hole model, got {config:?}"
            )))
        }
    };
    let m = params.m;
    let u0c = hole_threshold(width, m)?;
    if depth <= u0c {
        return Err(Error::NoCriticalMode(format!(
            "hole depth U0 = {depth} does not exceed the threshold {u0c} at R = {width}"
        )));
    }
    let rho0 = (depth - m * m).sqrt();
    let gamma_of = |k: f64| rho0 / (1.0 + k * k).sqrt();
    let residual = |k: f64| {
        let mo = match EllipticModulus::new(k) {
            Ok(mo) => mo,
            Err(_) => return f64::NAN,
        };
        let gamma = gamma_of(k);
        let t = ellipj::jacobi_triple(gamma * width, mo);
        let kk = k * gamma * t.sn;
        gamma * t.cn * t.dn + t.sn * (m * m + kk * kk).sqrt()
    };
    let admissible = |k: f64| {
        let mo = EllipticModulus::new(k).unwrap();
        match ellipj::complete_k(mo) {
            Ok(quarter) => gamma_of(k) * width < 2.0 * quarter - 1e-9,
            Err(_) => true,
        }
    };
    let mut root = None;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=SCAN_POINTS {
        let k = (i as f64 / SCAN_POINTS as f64).clamp(1e-9, 1.0 - 1e-9);
        if !admissible(k) {
            prev = None;
            continue;
        }
        let val = residual(k);
        if !val.is_finite() {
            prev = None;
            continue;
        }
        if let Some((kp, vp)) = prev {
            if vp.signum() != val.signum() {
                root = Some(roots::bisect(&residual, kp, k, ROOT_XTOL)?);
                break;
            }
        }
        prev = Some((k, val));
    }
    let k = root.ok_or_else(|| {
        Error::NoSolution(format!(
            "no modulus in (0, 1) matches the hole tail for U0 = {depth}, R = {width}: \
             residual spans [{:e}, {:e}]",
            residual(1e-9),
            residual(1.0 - 1e-9)
        ))
    })?;
    let gamma = gamma_of(k);
    let mo = EllipticModulus::new(k)?;
    let sn = ellipj::jacobi_triple(gamma * width, mo).sn;
    let x1 = (m / (gamma * k * sn)).asinh() / m - width;
    Ok(CondensateSolution {
        model: config,
        params,
        shape: Shape::HoleElliptic { k: mo, gamma, x1 },
    })
}

/// Condensate energy E = -(λ/4)∫φ⁴ over the model's domain, with hyperbolic
/// tails handled by an exponential substitution.
pub fn condensate_energy(sol: &CondensateSolution) -> f64 {
    let params = sol.params;
    let m = params.m;
    let f = |x: f64| sol.phi(x).powi(4);
    let run = |tol: f64| -> f64 {
        match sol.model {
            ModelConfig::Delta { .. } => {
                let near = quad::integrate(&f, 0.0, 3.0 / m, tol);
                let tail = quad::integrate_exp_tail(&f, 3.0 / m, 4.0 * m, tol);
                2.0 * (near.value + tail.value)
            }
            ModelConfig::RobinDirichlet { length, .. } => {
                quad::integrate(&f, 0.0, length, tol).value
            }
            ModelConfig::PotentialHole { width, .. } => {
                let inner = quad::integrate(&f, 0.0, width, tol);
                let tail = quad::integrate_exp_tail(&f, width, 4.0 * m, tol);
                inner.value + tail.value
            }
        }
    };
    let scale = (2.0 / params.lambda).powi(2) * m.powi(3);
    let rough = run(1e-4 * scale);
    -0.25 * params.lambda * run(1e-11 * (rough.abs() + 1e-3 * scale))
}

/// Largest absolute residual of the Gross–Pitaevskii equation on a uniform
/// grid of `grid_size` interior points, with the second derivative taken by a
/// five-point stencil (h = 1e-3/m) and matching points excluded.
pub fn gp_residual(sol: &CondensateSolution, grid_size: usize) -> f64 {
    let params = sol.params;
    let m = params.m;
    let h = 1e-3 / m;
    let margin = 10.0 * h;
    let (lo, hi, excluded): (f64, f64, Vec<f64>) = match sol.model {
        ModelConfig::Delta { .. } => (-4.0 / m, 4.0 / m, vec![0.0]),
        ModelConfig::RobinDirichlet { length, .. } => (margin, length - margin, vec![]),
        ModelConfig::PotentialHole { width, .. } => (margin, width + 4.0 / m, vec![width]),
    };
    let mut worst = 0.0_f64;
    for i in 0..grid_size {
        let x = lo + (hi - lo) * i as f64 / (grid_size - 1) as f64;
        if excluded.iter().any(|&e| (x - e).abs() < margin) {
            continue;
        }
        let dd = (-sol.phi(x + 2.0 * h) + 16.0 * sol.phi(x + h) - 30.0 * sol.phi(x)
            + 16.0 * sol.phi(x - h)
            - sol.phi(x - 2.0 * h))
            / (12.0 * h * h);
        let v = potential_eval(sol.model, x).unwrap_or(0.0);
        let phi = sol.phi(x);
        let residual = -dd + (m * m + v) * phi + params.lambda * phi * phi * phi;
        worst = worst.max(residual.abs());
    }
    worst
}

/// Leading coefficient α̃ of the near-threshold expansion of the interval
/// matching condition in powers of k²; the measured coupling excess obeys
/// κ - κ_c = |α̃|·k² + O(k⁴).
pub fn near_threshold_modulus(config: ModelConfig, params: PhysicalParams) -> Result<f64> {
    let length = match config {
        ModelConfig::RobinDirichlet { length, .. } => length,
        _ => {
            return Err(Error::Domain(format!(
                "near-threshold modulus expansion applies to the interval model, got {config:?}"
            )))
        }
    };
    let s = params.m * length;
    Ok(-params.m * (12.0 * s - 8.0 * (2.0 * s).sinh() + (4.0 * s).sinh())
        / (16.0 * s.sinh() * s.sinh()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const M1: PhysicalParams = PhysicalParams { m: 1.0, lambda: 1.0 };

    fn robin(kappa: f64, length: f64) -> ModelConfig {
        ModelConfig::RobinDirichlet { kappa, length }
    }
    fn hole(depth: f64, width: f64) -> ModelConfig {
        ModelConfig::PotentialHole { depth, width }
    }

    #[test]
    fn critical_kappa_reference_value() {
        assert!((critical_kappa(2.2, 1.0) - 1.024_859_893_164_471).abs() < 1e-14);
        assert!(critical_kappa(0.5, 1.0) > critical_kappa(1.0, 1.0));
    }

    #[test]
    fn robin_threshold_lengths() {
        let t = robin_thresholds(2.0, 1.0).unwrap();
        assert!((t.l0 - 0.549_306_144_334_054_9).abs() < 1e-14);
        assert!((t.l1.unwrap() - 0.555_360_367_269_795_8).abs() < 1e-13);
        assert!((t.l2.unwrap() - 1.666_081_101_809_387).abs() < 1e-13);
        assert!(t.l0 < t.l1.unwrap());

        let t = robin_thresholds(1.2, 1.0).unwrap();
        assert!(t.l1.is_none() && t.l2.is_none());

        let t = robin_thresholds(std::f64::consts::SQRT_2, 1.0).unwrap();
        let mid = std::f64::consts::FRAC_PI_2 / std::f64::consts::SQRT_2;
        assert!((t.l1.unwrap() - mid).abs() < 1e-12);
        assert!((t.l2.unwrap() - mid).abs() < 1e-12);

        assert!(robin_thresholds(1.0, 1.0).is_err());
    }

    #[test]
    fn hole_threshold_reference_value() {
        let u0c = hole_threshold(1.0, 1.0).unwrap();
        assert!((u0c - 5.115_858_365_694_522).abs() < 1e-11);
        let p0 = (u0c - 1.0).sqrt();
        assert!((p0 - 2.028_757_838_110_434).abs() < 1e-11);
        assert!(((p0 * 1.0).tan() + p0).abs() < 1e-10);
    }

    #[test]
    fn delta_condensate_profile_and_energy() {
        let sol = solve_delta(ModelConfig::Delta { kappa: 2.0 }, M1).unwrap();
        assert!((sol.shift().unwrap() - 0.549_306_144_334_054_9).abs() < 1e-14);
        assert!(sol.modulus().is_none());
        // Matching at the spike: φ'(0⁺) - φ'(0⁻) = -2κφ(0).
        let jump = sol.phi_prime(1e-12) - sol.phi_prime(-1e-12);
        assert!((jump + 2.0 * 2.0 * sol.phi(0.0)).abs() < 1e-9);
        let closed = -2.0 * (2.0 + 2.0) * (2.0 - 1.0) * (2.0 - 1.0) / 3.0;
        let e = condensate_energy(&sol);
        assert!((e - closed).abs() < 1e-9 * closed.abs(), "{e} vs {closed}");
    }

    #[test]
    fn delta_needs_supercritical_kappa() {
        assert!(matches!(
            solve_delta(ModelConfig::Delta { kappa: 0.8 }, M1),
            Err(Error::NoCriticalMode(_))
        ));
    }

    #[test]
    fn robin_residual_reduces_at_the_endpoints() {
        let cfg = robin(2.0, 1.0);
        let r0 = robin_matching_residual(EllipticModulus::new(0.0).unwrap(), cfg, M1).unwrap();
        let exact0 = -2.0 * 1.0_f64.sinh() + 1.0_f64.cosh();
        assert!((r0 - exact0).abs() < 1e-12);

        let r1 = robin_matching_residual(EllipticModulus::new(1.0).unwrap(), cfg, M1).unwrap();
        let beta = 1.0 / std::f64::consts::SQRT_2;
        let exact1 = -2.0 * beta.tan() + beta / (beta.cos() * beta.cos());
        assert!((r1 - exact1).abs() < 1e-12);
    }

    #[test]
    fn robin_moduli_match_references() {
        for (length, expect) in [
            (0.552, 0.389_123_398_278_739),
            (1.7, 0.752_258_840_520_734_9),
            (2.2, 0.297_032_093_913_438_54),
            (3.0, 0.118_890_938_047_483),
        ] {
            let sol = solve_robin(robin(2.0, length), M1).unwrap();
            let k = sol.modulus().unwrap();
            assert!((k - expect).abs() < 2e-9, "L={length}: k={k} vs {expect}");
        }
    }

    #[test]
    fn robin_gap_lengths_have_no_solution() {
        for length in [1.0, 1.3, 1.66] {
            match solve_robin(robin(2.0, length), M1) {
                Err(Error::KGap(diag)) => {
                    assert_eq!(diag.scanned_points, SCAN_POINTS + 1);
                    assert_eq!(diag.length, length);
                }
                other => panic!("L={length}: expected gap, got {other:?}"),
            }
        }
    }

    #[test]
    fn robin_subcritical_is_refused() {
        assert!(matches!(
            solve_robin(robin(1.0, 2.2), M1),
            Err(Error::NoCriticalMode(_))
        ));
    }

    #[test]
    fn robin_energy_reference_and_boundary_conditions() {
        let sol = solve_robin(robin(2.0, 2.2), M1).unwrap();
        let e = condensate_energy(&sol);
        assert!((e + 1.298_053_215_092_246_4).abs() < 1e-8 * e.abs());
        // Dirichlet end exactly, Robin end to solver accuracy.
        assert!(sol.phi(2.2).abs() < 1e-12);
        assert!((sol.phi_prime(0.0) + 2.0 * sol.phi(0.0)).abs() < 1e-8);
        // Pole-free on the interior.
        for i in 1..200 {
            let x = 2.2 * i as f64 / 200.0;
            assert!(sol.phi(x).is_finite() && sol.phi(x) > 0.0);
        }
    }

    #[test]
    fn robin_energy_near_lower_edge_sits_under_the_bound_state() {
        let sol = solve_robin(robin(2.0, 0.552), M1).unwrap();
        let e_cond = condensate_energy(&sol);
        assert!((e_cond + 1.549_285_966_227e-4).abs() < 1e-6 * e_cond.abs());
        let bs = crate::meanfield::bound_state(robin(2.0, 0.552), M1).unwrap();
        let e_bs = crate::meanfield::meanfield_energy(&bs);
        assert!(e_bs >= e_cond - 1e-12, "E_bs = {e_bs}, E_cond = {e_cond}");
    }

    #[test]
    fn hole_condensate_matches_references() {
        let sol = solve_hole(hole(6.0, 1.0), M1).unwrap();
        assert!((sol.modulus().unwrap() - 0.303_075_026_694_088).abs() < 2e-8);
        assert!((sol.shift().unwrap() - 0.333_266_843_645_96).abs() < 1e-6);
        let e = condensate_energy(&sol);
        assert!((e + 0.111_378_849_285_765_25).abs() < 1e-8 * e.abs());
        // Continuity of value and slope across the hole edge.
        assert!((sol.phi(1.0 - 1e-12) - sol.phi(1.0 + 1e-12)).abs() < 1e-9);
        assert!((sol.phi_prime(1.0 - 1e-9) - sol.phi_prime(1.0 + 1e-9)).abs() < 1e-5);
        assert!(sol.phi(0.0).abs() < 1e-15);
    }

    #[test]
    fn hole_modulus_grows_with_depth() {
        let expect = [
            (5.2, 0.096_641_457_681_2),
            (5.5, 0.203_880_362_151),
            (8.0, 0.508_797_596_36),
            (10.0, 0.621_324_168_285),
        ];
        let mut last = 0.0;
        for (u0, k_ref) in expect {
            let k = solve_hole(hole(u0, 1.0), M1).unwrap().modulus().unwrap();
            assert!((k - k_ref).abs() < 1e-8, "U0={u0}: k={k}");
            assert!(k > last);
            last = k;
        }
        assert!(matches!(
            solve_hole(hole(5.0, 1.0), M1),
            Err(Error::NoCriticalMode(_))
        ));
    }

    #[test]
    fn hole_tail_energy_matches_antiderivative() {
        let sol = solve_hole(hole(6.0, 1.0), M1).unwrap();
        let f = |x: f64| sol.phi(x).powi(4);
        let tail = quad::integrate_exp_tail(&f, 1.0, 4.0, 1e-13).value;
        let z1 = 1.0 + sol.shift().unwrap();
        let coth = 1.0 / z1.tanh();
        let closed = 4.0 * (2.0 / 3.0 + coth * coth * coth / 3.0 - coth);
        assert!((tail - closed).abs() < 1e-10, "{tail} vs {closed}");
    }

    #[test]
    fn residuals_are_small_for_all_three_solutions() {
        let delta = solve_delta(ModelConfig::Delta { kappa: 2.0 }, M1).unwrap();
        assert!(gp_residual(&delta, 400) < 1e-6);
        let interval = solve_robin(robin(2.0, 2.2), M1).unwrap();
        assert!(gp_residual(&interval, 400) < 1e-6);
        let well = solve_hole(hole(6.0, 1.0), M1).unwrap();
        assert!(gp_residual(&well, 400) < 1e-6);
    }

    #[test]
    fn phi_prime_matches_difference_quotient() {
        let sols = [
            solve_delta(ModelConfig::Delta { kappa: 2.0 }, M1).unwrap(),
            solve_robin(robin(2.0, 2.2), M1).unwrap(),
            solve_hole(hole(6.0, 1.0), M1).unwrap(),
        ];
        let points = [[0.4, 1.1], [0.5, 1.8], [0.6, 1.7]];
        let h = 1e-6;
        for (sol, pts) in sols.iter().zip(points) {
            for x in pts {
                let fd = (sol.phi(x + h) - sol.phi(x - h)) / (2.0 * h);
                assert!((fd - sol.phi_prime(x)).abs() < 1e-5, "x={x}");
            }
        }
    }

    #[test]
    fn modulus_expansion_magnitude_matches_measured_trend() {
        let alpha = near_threshold_modulus(robin(2.0, 1.0), M1).unwrap();
        assert!(alpha < 0.0);
        assert!((alpha.abs() - 0.464_984_883_561_989_25).abs() < 1e-12);
        // Solve the matching condition for κ at fixed small k and compare the
        // excess over κ_c with |α̃|k².
        let kappa_of = |k: f64| {
            let mo = EllipticModulus::new(k).unwrap();
            let beta = 1.0 / (1.0 + k * k).sqrt();
            let t = ellipj::jacobi_triple(beta * 1.0, mo.complement());
            let sc = t.sn / t.cn;
            beta * t.dn / (t.cn * t.cn) / sc
        };
        let kappa_c = critical_kappa(1.0, 1.0);
        let slope = (kappa_of(0.01) - kappa_c) / 1e-4;
        assert!(
            (slope - alpha.abs()).abs() < 1e-2 * alpha.abs(),
            "slope {slope} vs |alpha| {}",
            alpha.abs()
        );
    }
}
