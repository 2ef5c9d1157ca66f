//! Fluctuation spectrum over the interval background: mode functions on the
//! imaginary frequency axis, their large-frequency asymptotics, and the
//! renormalized vacuum energy, both below threshold (in closed form) and over
//! a condensate (numerically).

use rayon::prelude::*;

use crate::condensate::CondensateSolution;
use crate::error::{Error, Result};
use crate::meanfield::BoundStateSolution;
use crate::models::{ModelConfig, PhysicalParams};
use crate::numerics::{ode, quad, roots};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const SCAN_POINTS: usize = 500;
const FIT_POINTS: usize = 25;
const ODE_RTOL: f64 = 1e-10;
const ODE_ATOL: f64 = 1e-13;

/// Which background enters the fluctuation potential 𝒱 = 3λφ².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackgroundSource {
    /// 𝒱 ≡ 0: bare Robin–Dirichlet boundary conditions.
    Zero,
    /// The exact elliptic condensate.
    ExactCondensate,
    /// The variational bound-state condensate μφ_bs.
    ApproxBoundState,
}

#[derive(Debug, Clone, Copy)]
enum PotentialKind {
    Zero,
    Exact(CondensateSolution),
    Approx(BoundStateSolution),
}

/// The potential 𝒱 felt by fluctuations around a condensate background on
/// the interval, with its integral cached for the asymptotic subtraction.
#[derive(Debug, Clone, Copy)]
pub struct FluctuationPotential {
    source: BackgroundSource,
    integral: f64,
    kind: PotentialKind,
}

impl FluctuationPotential {
    pub fn zero() -> Self {
        Self {
            source: BackgroundSource::Zero,
            integral: 0.0,
            kind: PotentialKind::Zero,
        }
    }

    /// 𝒱 = 3λφ₀² from an exact interval condensate.
    pub fn from_condensate(sol: CondensateSolution) -> Result<Self> {
        let length = match sol.model {
            ModelConfig::RobinDirichlet { length, .. } => length,
            _ => {
                return Err(Error::Domain(format!(
                    "fluctuation potential is built on the interval model, got {:?}",
                    sol.model
                )))
            }
        };
        let lambda = sol.params.lambda;
        let f = |x: f64| 3.0 * lambda * sol.phi(x) * sol.phi(x);
        let rough = quad::integrate(&f, 0.0, length, 1e-6).value;
        let integral = quad::integrate(&f, 0.0, length, 1e-13 * (1.0 + rough.abs())).value;
        Ok(Self {
            source: BackgroundSource::ExactCondensate,
            integral,
            kind: PotentialKind::Exact(sol),
        })
    }

    /// 𝒱 = 3λ(μφ_bs)² from the variational bound-state condensate.
    pub fn from_bound_state(bs: BoundStateSolution) -> Result<Self> {
        let length = match bs.model {
            ModelConfig::RobinDirichlet { length, .. } => length,
            _ => {
                return Err(Error::Domain(format!(
                    "fluctuation potential is built on the interval model, got {:?}",
                    bs.model
                )))
            }
        };
        let lambda = bs.params.lambda;
        let f = |x: f64| {
            let phi = bs.mu * bs.phi(x);
            3.0 * lambda * phi * phi
        };
        let rough = quad::integrate(&f, 0.0, length, 1e-6).value;
        let integral = quad::integrate(&f, 0.0, length, 1e-13 * (1.0 + rough.abs())).value;
        Ok(Self {
            source: BackgroundSource::ApproxBoundState,
            integral,
            kind: PotentialKind::Approx(bs),
        })
    }

    pub fn source(&self) -> BackgroundSource {
        self.source
    }

    /// ∫₀^L 𝒱(x) dx.
    pub fn integral(&self) -> f64 {
        self.integral
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            PotentialKind::Zero => 0.0,
            PotentialKind::Exact(sol) => {
                let phi = sol.phi(x);
                3.0 * sol.params.lambda * phi * phi
            }
            PotentialKind::Approx(bs) => {
                let phi = bs.mu * bs.phi(x);
                3.0 * bs.params.lambda * phi * phi
            }
        }
    }
}

/// Vacuum energy with the bookkeeping needed to judge it.
#[derive(Debug, Clone, Copy)]
pub struct VacuumEnergyReport {
    pub e0_ren: f64,
    /// The soft/boundary split (E1, E2) of the subcritical closed form, when
    /// that route was taken.
    pub parts: Option<(f64, f64)>,
    /// Estimated size of what lies beyond the frequency cutoff (or, below
    /// threshold, beyond the truncation of the boundary part).
    pub tail_estimate: f64,
    pub quadrature_error: f64,
}

/// Knobs of the numeric vacuum-energy pipeline.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumOptions {
    /// Frequency cutoff Λ in units of m.
    pub cutoff: f64,
    /// Absolute tolerance of the frequency quadrature.
    pub tol: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            cutoff: 200.0,
            tol: 1e-8,
        }
    }
}

/// ln(1-w) + w, which is O(w²) for small w; the direct form loses it to
/// rounding below w ~ 1e-8, so a short series takes over there.
fn ln_one_minus_plus(w: f64) -> f64 {
    if w.abs() < 1e-4 {
        -w * w * (0.5 + w * (1.0 / 3.0 + w * (0.25 + w * 0.2)))
    } else {
        (-w).ln_1p() + w
    }
}

/// The bare-boundary mode function on the imaginary axis,
/// Φ(iξ) = 2cosh(ξL) - (2κ/ξ)sinh(ξL), split as
/// lnΦ = ξL + ln(1-κ/ξ) + lnΦ₂ with lnΦ₂ = ln(1 + ((ξ+κ)/(ξ-κ))e^{-2ξL}).
///
/// The returned soft part lnΦ₁ = ln(1-κ/ξ) + κ/ξ carries an extra κ/ξ — the
/// non-integrable piece the vacuum-energy renormalization removes — so the
/// pieces reassemble as lnΦ = ξL + (lnΦ₁ - κ/ξ) + lnΦ₂.
///
/// The split is real for ξ > κ; at ξ = κ the mode function is refused.
pub fn mode_fn_subcritical(xi: f64, kappa: f64, length: f64) -> Result<(f64, f64, f64)> {
    if !(xi.is_finite() && xi > 0.0) {
        return Err(Error::Domain(format!("frequency must be positive, got {xi}")));
    }
    if (xi - kappa).abs() <= 1e-12 * kappa.abs().max(1.0) {
        return Err(Error::Singularity(kappa));
    }
    let s = xi * length;
    let phi = 2.0 * s.cosh() - (2.0 * kappa / xi) * s.sinh();
    let ln1 = ln_one_minus_plus(kappa / xi);
    let ln2 = (((xi + kappa) / (xi - kappa)) * (-2.0 * s).exp()).ln_1p();
    Ok((phi, ln1, ln2))
}

/// Renormalized vacuum energy below threshold (0 < κ < m), where both parts
/// of the split mode function integrate in closed form:
/// E0 = (1/2π)∫₀^∞ [lnΦ₁ + lnΦ₂](√(m²+t²)) dt.
pub fn vacuum_energy_subcritical(
    params: PhysicalParams,
    kappa: f64,
    length: f64,
) -> Result<VacuumEnergyReport> {
    let m = params.m;
    if !(kappa.is_finite() && kappa > 0.0) {
        return Err(Error::Domain(format!(
            "robin coefficient must be positive, got {kappa}"
        )));
    }
    if kappa >= m {
        return Err(Error::CriticalWithoutCondensate(format!(
            "kappa = {kappa} >= m = {m}: the soft part ln(1 - kappa/xi) leaves the \
             subcritical regime; use the numeric route over a condensate background"
        )));
    }
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::Domain(format!("length must be positive, got {length}")));
    }
    let xi_of = |t: f64| (m * m + t * t).sqrt();
    let soft = |t: f64| ln_one_minus_plus(kappa / xi_of(t));
    let boundary = |t: f64| {
        let xi = xi_of(t);
        (((xi + kappa) / (xi - kappa)) * (-2.0 * xi * length).exp()).ln_1p()
    };
    let tol = 1e-13 * (1.0 + kappa * kappa / (m * m));
    let t1 = 200.0 * m;
    let near = quad::integrate(&soft, 0.0, t1, tol);
    let far = quad::integrate_inv_tail(&soft, t1, tol);
    let e1 = (near.value + far.value) / TWO_PI;

    let t2 = (3.0 * m).max(30.0 / length);
    let bnd = quad::integrate(&boundary, 0.0, t2, tol);
    let e2 = bnd.value / TWO_PI;

    let xi2 = xi_of(t2);
    let truncated = ((xi2 + kappa) / (xi2 - kappa)) * (-2.0 * xi2 * length).exp()
        / (2.0 * length);
    Ok(VacuumEnergyReport {
        e0_ren: e1 + e2,
        parts: Some((e1, e2)),
        tail_estimate: (truncated + far.error) / TWO_PI,
        quadrature_error: (near.error + far.error + bnd.error) / TWO_PI,
    })
}

/// Mode function over a condensate background, Φ(iξ) = 2ũ(L) from
/// ũ'' = -2ξũ' + 𝒱ũ with ũ(0) = 1, ũ'(0) = -κ-ξ (the growing exponential
/// factored out).
pub fn mode_fn_numeric(
    xi: f64,
    v: &FluctuationPotential,
    kappa: f64,
    length: f64,
) -> Result<f64> {
    if !(xi.is_finite() && xi > 0.0) {
        return Err(Error::Domain(format!("frequency must be positive, got {xi}")));
    }
    let rhs = |x: f64, y: &[f64; 2]| [y[1], -2.0 * xi * y[1] + v.eval(x) * y[0]];
    let y = ode::integrate(&rhs, 0.0, length, [1.0, -kappa - xi], ODE_RTOL, ODE_ATOL)?;
    Ok(2.0 * y[0])
}

/// Leading large-ξ behaviour of lnΦ over the background:
/// lnΦ ≈ -a₁/(2ξ) with a₁ = 2κ - ∫𝒱.
pub fn asym_subtraction(xi: f64, v: &FluctuationPotential, kappa: f64) -> f64 {
    -(2.0 * kappa - v.integral()) / (2.0 * xi)
}

/// Scans Φ(iξ) for zeros on ξ ∈ [m, Λ]; a zero is an imaginary eigenfrequency,
/// i.e. a remaining instability of the background.
pub fn stability_scan(
    v: &FluctuationPotential,
    params: PhysicalParams,
    kappa: f64,
    length: f64,
) -> Result<Vec<f64>> {
    stability_scan_with(v, params, kappa, length, &SpectrumOptions::default())
}

pub fn stability_scan_with(
    v: &FluctuationPotential,
    params: PhysicalParams,
    kappa: f64,
    length: f64,
    opts: &SpectrumOptions,
) -> Result<Vec<f64>> {
    let m = params.m;
    let lo = m * (1.0 + 1e-9);
    let hi = opts.cutoff * m;
    let ratio = (hi / lo).ln() / (SCAN_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| lo * (ratio * i as f64).exp())
        .collect();
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&xi| mode_fn_numeric(xi, v, kappa, length))
        .collect::<Result<Vec<f64>>>()?;
    let f = |xi: f64| mode_fn_numeric(xi, v, kappa, length).unwrap_or(f64::NAN);
    let mut zeros = Vec::new();
    for i in 1..SCAN_POINTS {
        if values[i - 1].signum() != values[i].signum() {
            zeros.push(roots::bisect(&f, grid[i - 1], grid[i], 1e-10)?);
        }
    }
    Ok(zeros)
}

/// Renormalized vacuum energy over a condensate background:
/// E0 = (1/2π)∫₀^T [lnΦ - lnΦ^as] dt plus the fitted 1/ξ², 1/ξ³ tail beyond
/// the cutoff. Refuses backgrounds whose spectrum still has a zero of Φ on
/// [m, Λ].
pub fn vacuum_energy_renormalized(
    v: &FluctuationPotential,
    params: PhysicalParams,
    kappa: f64,
    length: f64,
) -> Result<VacuumEnergyReport> {
    vacuum_energy_renormalized_with(v, params, kappa, length, &SpectrumOptions::default())
}

pub fn vacuum_energy_renormalized_with(
    v: &FluctuationPotential,
    params: PhysicalParams,
    kappa: f64,
    length: f64,
    opts: &SpectrumOptions,
) -> Result<VacuumEnergyReport> {
    let m = params.m;
    let zeros = stability_scan_with(v, params, kappa, length, opts)?;
    if !zeros.is_empty() {
        return Err(Error::UnstableSpectrum { zeros });
    }
    let cutoff = opts.cutoff * m;
    let t_max = (cutoff * cutoff - m * m).sqrt();
    let subtracted = |xi: f64| -> Result<f64> {
        let phi = mode_fn_numeric(xi, v, kappa, length)?;
        if phi <= 0.0 {
            return Err(Error::UnstableSpectrum { zeros: vec![xi] });
        }
        Ok(phi.ln() - asym_subtraction(xi, v, kappa))
    };
    let failure = std::cell::RefCell::new(None);
    let g = |t: f64| {
        let xi = (m * m + t * t).sqrt();
        match subtracted(xi) {
            Ok(val) => val,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let bulk = quad::integrate(&g, 0.0, t_max, opts.tol);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }

    // Two-term least-squares tail fit over the top decade of the cutoff.
    let fit_lo = cutoff / 10.0;
    let ratio = (cutoff / fit_lo).ln() / (FIT_POINTS - 1) as f64;
    let mut s22 = 0.0;
    let mut s23 = 0.0;
    let mut s33 = 0.0;
    let mut b2 = 0.0;
    let mut b3 = 0.0;
    let mut samples = Vec::with_capacity(FIT_POINTS);
    for i in 0..FIT_POINTS {
        let xi = fit_lo * (ratio * i as f64).exp();
        let gval = subtracted(xi)?;
        let u2 = 1.0 / (xi * xi);
        let u3 = u2 / xi;
        s22 += u2 * u2;
        s23 += u2 * u3;
        s33 += u3 * u3;
        b2 += gval * u2;
        b3 += gval * u3;
        samples.push((xi, gval));
    }
    let det = s22 * s33 - s23 * s23;
    let c2 = (b2 * s33 - b3 * s23) / det;
    let c3 = (s22 * b3 - s23 * b2) / det;
    let resid_max = samples
        .iter()
        .map(|&(xi, gval)| (gval - c2 / (xi * xi) - c3 / (xi * xi * xi)).abs())
        .fold(0.0_f64, f64::max);

    let i2 = (std::f64::consts::FRAC_PI_2 - (t_max / m).atan()) / m;
    let i3 = 1.0 / (m * m) - t_max / (m * m * cutoff);
    Ok(VacuumEnergyReport {
        e0_ren: (bulk.value + c2 * i2 + c3 * i3) / TWO_PI,
        parts: None,
        tail_estimate: (c3.abs() * i3 + resid_max * i2) / TWO_PI,
        quadrature_error: bulk.error / TWO_PI,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condensate::solve_robin;
    use crate::meanfield::bound_state;

    const M1: PhysicalParams = PhysicalParams { m: 1.0, lambda: 1.0 };

    fn robin(kappa: f64, length: f64) -> ModelConfig {
        ModelConfig::RobinDirichlet { kappa, length }
    }

    #[test]
    fn split_reassembles_the_mode_function() {
        for xi in [1.0, 2.5, 7.0] {
            let (phi, ln1, ln2) = mode_fn_subcritical(xi, 0.5, 2.2).unwrap();
            let reassembled = xi * 2.2 + (ln1 - 0.5 / xi) + ln2;
            assert!(
                (phi.ln() - reassembled).abs() < 1e-12 * phi.ln().abs().max(1.0),
                "xi={xi}"
            );
        }
    }

    #[test]
    fn mode_fn_refuses_its_pole() {
        assert!(matches!(
            mode_fn_subcritical(0.5, 0.5, 2.2),
            Err(Error::Singularity(_))
        ));
        assert!(mode_fn_subcritical(-1.0, 0.5, 2.2).is_err());
    }

    #[test]
    fn subcritical_energy_reference_values() {
        let report = vacuum_energy_subcritical(M1, 0.5, 2.2).unwrap();
        let (e1, e2) = report.parts.unwrap();
        assert!((e1 + 0.040_902_336_952_512_5).abs() < 1e-9, "E1 = {e1}");
        assert!((e2 - 0.003_333_534_663_428_236_4).abs() < 1e-9, "E2 = {e2}");
        assert!((report.e0_ren + 0.037_568_802_289_084_26).abs() < 1e-9);
        assert!(report.quadrature_error < 1e-9);
        assert!(report.tail_estimate < 1e-9);
    }

    #[test]
    fn boundary_part_dies_off_with_separation() {
        let far = vacuum_energy_subcritical(M1, 0.5, 20.0).unwrap();
        let (e1_far, e2_far) = far.parts.unwrap();
        assert!(e2_far.abs() < 1e-9);
        // The soft part knows nothing about L.
        let near = vacuum_energy_subcritical(M1, 0.5, 2.2).unwrap();
        assert!((e1_far - near.parts.unwrap().0).abs() < 1e-12);
    }

    #[test]
    fn subcritical_route_refuses_critical_couplings() {
        assert!(matches!(
            vacuum_energy_subcritical(M1, 1.2, 2.2),
            Err(Error::CriticalWithoutCondensate(_))
        ));
        assert!(vacuum_energy_subcritical(M1, 0.0, 2.2).is_err());
    }

    #[test]
    fn numeric_mode_fn_matches_closed_form_on_empty_background() {
        let v = FluctuationPotential::zero();
        for xi in [1.1, 3.0, 20.0, 150.0] {
            let numeric = mode_fn_numeric(xi, &v, 1.3, 2.5).unwrap();
            let exact = (1.0 - 1.3 / xi) + (1.0 + 1.3 / xi) * (-2.0 * xi * 2.5_f64).exp();
            assert!(
                (numeric - exact).abs() < 1e-9 * exact.abs().max(1e-3),
                "xi={xi}: {numeric} vs {exact}"
            );
        }
    }

    #[test]
    fn background_potentials_and_their_integrals() {
        let sol = solve_robin(robin(1.3, 3.0), M1).unwrap();
        let exact = FluctuationPotential::from_condensate(sol).unwrap();
        assert_eq!(exact.source(), BackgroundSource::ExactCondensate);
        assert!((exact.integral() - 1.746_464_235_628_598).abs() < 1e-8);

        let bs = bound_state(robin(1.3, 3.0), M1).unwrap();
        let approx = FluctuationPotential::from_bound_state(bs).unwrap();
        assert!((approx.integral() - 1.572_010_289_745_293_7).abs() < 1e-8);

        let x = 1.1;
        assert!((exact.eval(x) - 3.0 * sol.phi(x) * sol.phi(x)).abs() < 1e-14);
        let phi = bs.mu * bs.phi(x);
        assert!((approx.eval(x) - 3.0 * phi * phi).abs() < 1e-14);

        let delta_sol = crate::condensate::solve_delta(ModelConfig::Delta { kappa: 2.0 }, M1);
        assert!(FluctuationPotential::from_condensate(delta_sol.unwrap()).is_err());
    }

    #[test]
    fn asym_subtraction_uses_the_heat_kernel_coefficient() {
        let v = FluctuationPotential::zero();
        assert!((asym_subtraction(4.0, &v, 1.3) + 2.6 / 8.0).abs() < 1e-15);
        let sol = solve_robin(robin(1.3, 3.0), M1).unwrap();
        let exact = FluctuationPotential::from_condensate(sol).unwrap();
        let expect = -(2.6 - exact.integral()) / 8.0;
        assert!((asym_subtraction(4.0, &exact, 1.3) - expect).abs() < 1e-14);
    }

    #[test]
    fn stability_scan_finds_the_bare_unstable_mode() {
        let v = FluctuationPotential::zero();
        let zeros = stability_scan(&v, M1, 2.0, 2.2).unwrap();
        assert_eq!(zeros.len(), 1);
        assert!((zeros[0] - 1.999_395_553_380_335_6).abs() < 1e-6);
        // Below threshold the unstable-mode frequency sits under m.
        assert!(stability_scan(&v, M1, 0.5, 2.2).unwrap().is_empty());
    }

    #[test]
    fn condensate_background_cures_the_instability() {
        let sol = solve_robin(robin(1.3, 3.0), M1).unwrap();
        let exact = FluctuationPotential::from_condensate(sol).unwrap();
        assert!(stability_scan(&exact, M1, 1.3, 3.0).unwrap().is_empty());

        let bs = bound_state(robin(1.3, 3.0), M1).unwrap();
        let approx = FluctuationPotential::from_bound_state(bs).unwrap();
        assert!(stability_scan(&approx, M1, 1.3, 3.0).unwrap().is_empty());
    }

    #[test]
    fn renormalized_energy_refuses_unstable_backgrounds() {
        let v = FluctuationPotential::zero();
        match vacuum_energy_renormalized(&v, M1, 2.0, 2.2) {
            Err(Error::UnstableSpectrum { zeros }) => {
                assert!((zeros[0] - 1.9994).abs() < 1e-3);
            }
            other => panic!("expected instability, got {other:?}"),
        }
    }

    #[test]
    fn renormalized_energy_matches_subcritical_closed_form() {
        let v = FluctuationPotential::zero();
        let numeric = vacuum_energy_renormalized(&v, M1, 0.5, 2.2).unwrap();
        let closed = vacuum_energy_subcritical(M1, 0.5, 2.2).unwrap();
        assert!(
            (numeric.e0_ren - closed.e0_ren).abs() < 5e-7,
            "{} vs {}",
            numeric.e0_ren,
            closed.e0_ren
        );
        assert!(numeric.tail_estimate < 1e-7);
        assert!(numeric.parts.is_none());
    }

    #[test]
    fn renormalized_energy_over_condensate_backgrounds() {
        let sol = solve_robin(robin(1.3, 3.0), M1).unwrap();
        let exact = FluctuationPotential::from_condensate(sol).unwrap();
        let e_exact = vacuum_energy_renormalized(&exact, M1, 1.3, 3.0).unwrap();
        assert!(
            (e_exact.e0_ren - 0.043_039_687_586_078_09).abs() < 5e-7,
            "exact background: {}",
            e_exact.e0_ren
        );

        let bs = bound_state(robin(1.3, 3.0), M1).unwrap();
        let approx = FluctuationPotential::from_bound_state(bs).unwrap();
        let e_approx = vacuum_energy_renormalized(&approx, M1, 1.3, 3.0).unwrap();
        assert!(
            (e_approx.e0_ren - 0.040_666_894_996_144_96).abs() < 5e-7,
            "approximate background: {}",
            e_approx.e0_ren
        );
    }

    #[test]
    fn doubling_the_cutoff_moves_the_energy_less_than_the_tail_estimate() {
        let v = FluctuationPotential::zero();
        let base = vacuum_energy_renormalized(&v, M1, 0.5, 2.2).unwrap();
        let wide = vacuum_energy_renormalized_with(
            &v,
            M1,
            0.5,
            2.2,
            &SpectrumOptions { cutoff: 400.0, ..Default::default() },
        )
        .unwrap();
        assert!(
            (wide.e0_ren - base.e0_ren).abs() < base.tail_estimate,
            "shift {:e} vs estimate {:e}",
            (wide.e0_ren - base.e0_ren).abs(),
            base.tail_estimate
        );
    }
}
