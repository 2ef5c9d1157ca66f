//! Perturbative treatment of the unstable mode: the linear bound state, its
//! normalization integrals, the variational condensate amplitude, the
//! mean-field energy, and the first-order correction built from the Green's
//! function of the quadratic operator.

use crate::condensate;
use crate::error::{Error, Result};
use crate::models::{ModelConfig, PhysicalParams};
use crate::numerics::{quad, roots};

const WRONSKIAN_FLOOR: f64 = 1e-10;

/// The negative mode of the linearized problem: (-d²/dx² + m² + V)φ = -ε²φ
/// with unit-amplitude profile, together with the normalization integrals
/// a = ∫φ², b = ∫φ⁴ and the variational amplitude μ.
#[derive(Debug, Clone, Copy)]
pub struct BoundStateSolution {
    pub model: ModelConfig,
    pub params: PhysicalParams,
    /// Binding strength: the eigenvalue is -ε².
    pub epsilon: f64,
    /// Exterior decay rate, q = √(m² + ε²).
    pub q: f64,
    /// Interior wavenumber of the hole model.
    pub p: Option<f64>,
    pub a: f64,
    pub b: f64,
    /// Amplitude minimizing the quartic energy functional on the φ ray.
    pub mu: f64,
}

impl BoundStateSolution {
    /// The unit-amplitude profile; the condensate approximation is μ·φ(x).
    pub fn phi(&self, x: f64) -> f64 {
        match self.model {
            ModelConfig::Delta { .. } => (-self.q * x.abs()).exp(),
            ModelConfig::RobinDirichlet { length, .. } => {
                (-self.q * x).exp() - (self.q * (x - 2.0 * length)).exp()
            }
            ModelConfig::PotentialHole { width, .. } => {
                let p = self.p.expect("hole bound state carries p");
                if x < width {
                    (-self.q * width).exp() * (p * x).sin()
                } else {
                    (p * width).sin() * (-self.q * x).exp()
                }
            }
        }
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let ratio = (hi / lo).ln() / (n - 1) as f64;
    (0..n).map(move |i| lo * (ratio * i as f64).exp())
}

fn closed_norm_constants(model: ModelConfig, q: f64, p: Option<f64>) -> (f64, f64) {
    match model {
        ModelConfig::Delta { .. } => (1.0 / q, 1.0 / (2.0 * q)),
        ModelConfig::RobinDirichlet { length, .. } => {
            let s = q * length;
            let a = (-2.0 * s).exp() * ((2.0 * s).sinh() - 2.0 * s) / q;
            let b = (-4.0 * s).exp() * ((4.0 * s).sinh() - 8.0 * (2.0 * s).sinh() + 12.0 * s)
                / (2.0 * q);
            (a, b)
        }
        ModelConfig::PotentialHole { width, .. } => {
            let p = p.expect("hole bound state carries p");
            let u0 = p * p + q * q;
            let s = q * width;
            let a = (-2.0 * s).exp() * (1.0 + s) / (2.0 * q);
            let b = (-4.0 * s).exp() * (3.0 * width * q * u0 + 3.0 * q * q + 2.0 * p * p)
                / (8.0 * q * u0);
            (a, b)
        }
    }
}

/// Normalization integrals (a, b) = (∫φ_bs², ∫φ_bs⁴) in closed form.
pub fn norm_constants(bs: &BoundStateSolution) -> (f64, f64) {
    closed_norm_constants(bs.model, bs.q, bs.p)
}

/// Amplitude minimizing E[μφ_bs] = -ε²aμ² + ½λbμ⁴ over μ.
pub fn variational_mu(a: f64, b: f64, epsilon: f64, lambda: f64) -> f64 {
    epsilon * (a / (lambda * b)).sqrt()
}

/// The minimum of the quartic functional on the bound-state ray,
/// E_bs = -ε⁴a²/(4λb).
pub fn meanfield_energy(bs: &BoundStateSolution) -> f64 {
    let e2 = bs.epsilon * bs.epsilon;
    -e2 * e2 * bs.a * bs.a / (4.0 * bs.params.lambda * bs.b)
}

/// Solves the linear eigenvalue problem for the unstable mode of `config`.
///
/// Fails with `NoCriticalMode` when the coupling sits at or below the
/// threshold where the negative eigenvalue first appears.
pub fn bound_state(config: ModelConfig, params: PhysicalParams) -> Result<BoundStateSolution> {
    config.validate()?;
    let m = params.m;
    let finish = |epsilon: f64, p: Option<f64>| {
        let q = (m * m + epsilon * epsilon).sqrt();
        let (a, b) = closed_norm_constants(config, q, p);
        BoundStateSolution {
            model: config,
            params,
            epsilon,
            q,
            p,
            a,
            b,
            mu: variational_mu(a, b, epsilon, params.lambda),
        }
    };
    match config {
        ModelConfig::Delta { kappa } => {
            if kappa <= m {
                return Err(Error::NoCriticalMode(format!(
                    "delta strength kappa = {kappa} does not exceed the mass m = {m}"
                )));
            }
            Ok(finish((kappa * kappa - m * m).sqrt(), None))
        }
        ModelConfig::RobinDirichlet { kappa, length } => {
            let kappa_c = condensate::critical_kappa(length, m);
            if kappa <= kappa_c {
                return Err(Error::NoCriticalMode(format!(
                    "kappa = {kappa} does not exceed kappa_c = {kappa_c} at L = {length}"
                )));
            }
            let f = |eps: f64| {
                let q = (m * m + eps * eps).sqrt();
                q - kappa * (q * length).tanh()
            };
            let hi = (10.0 * m).max(kappa);
            let mut prev = (1e-6 * m, f(1e-6 * m));
            for eps in log_grid(1e-6 * m, hi, 400).skip(1) {
                let val = f(eps);
                if prev.1.signum() != val.signum() {
                    let root = roots::bisect(&f, prev.0, eps, 1e-12)?;
                    return Ok(finish(root, None));
                }
                prev = (eps, val);
            }
            Err(Error::NoCriticalMode(format!(
                "no binding strength found for kappa = {kappa}, L = {length}"
            )))
        }
        ModelConfig::PotentialHole { depth, width } => {
            let u0c = condensate::hole_threshold(width, m)?;
            if depth <= u0c {
                return Err(Error::NoCriticalMode(format!(
                    "hole depth U0 = {depth} does not exceed the threshold {u0c} at R = {width}"
                )));
            }
            let p_of = |eps: f64| (depth - m * m - eps * eps).sqrt();
            let f = |eps: f64| {
                let p = p_of(eps);
                let q = (m * m + eps * eps).sqrt();
                (p * width).tan() + p / q
            };
            let branch = |eps: f64| ((p_of(eps) * width - std::f64::consts::FRAC_PI_2)
                / std::f64::consts::PI)
                .floor();
            let hi = (depth - m * m).sqrt() - 1e-9;
            let mut best = None;
            let mut prev = (1e-6 * m, f(1e-6 * m), branch(1e-6 * m));
            for eps in log_grid(1e-6 * m, hi, 600).skip(1) {
                let val = f(eps);
                let br = branch(eps);
                if br == prev.2 && prev.1.signum() != val.signum() {
                    best = Some(roots::bisect(&f, prev.0, eps, 1e-12)?);
                }
                prev = (eps, val, br);
            }
            match best {
                Some(eps) => Ok(finish(eps, Some(p_of(eps)))),
                None => Err(Error::NoCriticalMode(format!(
                    "no binding strength found for U0 = {depth}, R = {width}"
                ))),
            }
        }
    }
}

/// Green's function of (-d²/dx² + m² + V) at zero spectral parameter, built
/// from the homogeneous solutions satisfying the left and right boundary
/// conditions.
#[derive(Debug, Clone, Copy)]
pub struct GreensFunction {
    model: ModelConfig,
    m: f64,
    wronskian: f64,
}

impl GreensFunction {
    fn u_left(&self, x: f64) -> f64 {
        let m = self.m;
        match self.model {
            ModelConfig::Delta { kappa } => {
                if x <= 0.0 {
                    (m * x).exp()
                } else {
                    (1.0 - kappa / m) * (m * x).exp() + (kappa / m) * (-m * x).exp()
                }
            }
            ModelConfig::RobinDirichlet { kappa, .. } => {
                (m * x).cosh() - (kappa / m) * (m * x).sinh()
            }
            ModelConfig::PotentialHole { depth, width } => {
                let rho = (depth - m * m).sqrt();
                if x <= width {
                    (rho * x).sin() / rho
                } else {
                    let v = (rho * width).sin() / rho;
                    let d = (rho * width).cos();
                    0.5 * (v + d / m) * (m * (x - width)).exp()
                        + 0.5 * (v - d / m) * (-m * (x - width)).exp()
                }
            }
        }
    }

    fn u_right(&self, x: f64) -> f64 {
        let m = self.m;
        match self.model {
            ModelConfig::Delta { kappa } => {
                if x >= 0.0 {
                    (-m * x).exp()
                } else {
                    (1.0 - kappa / m) * (-m * x).exp() + (kappa / m) * (m * x).exp()
                }
            }
            ModelConfig::RobinDirichlet { length, .. } => (m * (x - length)).sinh(),
            ModelConfig::PotentialHole { depth, width } => {
                let rho = (depth - m * m).sqrt();
                if x >= width {
                    (-m * (x - width)).exp()
                } else {
                    let c = (rho * width).sin() - (m / rho) * (rho * width).cos();
                    let d = (rho * width).cos() + (m / rho) * (rho * width).sin();
                    c * (rho * x).sin() + d * (rho * x).cos()
                }
            }
        }
    }

    pub fn wronskian(&self) -> f64 {
        self.wronskian
    }

    pub fn eval(&self, x: f64, xp: f64) -> f64 {
        let (lo, hi) = if x <= xp { (x, xp) } else { (xp, x) };
        -self.u_left(lo) * self.u_right(hi) / self.wronskian
    }
}

/// Builds the Green's function of the quadratic operator for `config`.
///
/// Fails with `SingularOperator` when the homogeneous solutions are linearly
/// dependent, i.e. when the operator has a zero mode (coupling exactly at
/// threshold).
pub fn greens_function(config: ModelConfig, params: PhysicalParams) -> Result<GreensFunction> {
    config.validate()?;
    let m = params.m;
    let wronskian = match config {
        ModelConfig::Delta { kappa } => 2.0 * (kappa - m),
        ModelConfig::RobinDirichlet { kappa, length } => {
            m * (m * length).cosh() - kappa * (m * length).sinh()
        }
        ModelConfig::PotentialHole { depth, width } => {
            if depth <= m * m {
                return Err(Error::Domain(format!(
                    "hole depth U0 = {depth} must exceed m² for the oscillatory interior"
                )));
            }
            let rho = (depth - m * m).sqrt();
            -m * (rho * width).sin() / rho - (rho * width).cos()
        }
    };
    if wronskian.abs() < WRONSKIAN_FLOOR {
        return Err(Error::SingularOperator { wronskian });
    }
    Ok(GreensFunction {
        model: config,
        m,
        wronskian,
    })
}

/// First-order correction to the condensate around μφ_bs:
/// δφ(x) = -ε²√(a/4b) ∫ G(x,x') [φ_bs + (λa/4b)φ_bs³](x') dx'.
#[derive(Debug, Clone, Copy)]
pub struct FirstOrderCorrection {
    bs: BoundStateSolution,
    green: GreensFunction,
    prefactor: f64,
    cubic_weight: f64,
}

impl FirstOrderCorrection {
    pub fn eval(&self, x: f64) -> f64 {
        let bs = &self.bs;
        let source = |xp: f64| {
            let phi = bs.phi(xp);
            self.green.eval(x, xp) * (phi + self.cubic_weight * phi * phi * phi)
        };
        let reach = 40.0 / bs.params.m;
        let tol = 1e-10 * (1.0 + self.prefactor.abs());
        let integral = match bs.model {
            ModelConfig::Delta { .. } => {
                let lo = -(x.abs() + reach);
                quad::integrate_split(&source, lo, -lo, &[0.0, x], tol)
            }
            ModelConfig::RobinDirichlet { length, .. } => {
                quad::integrate_split(&source, 0.0, length, &[x], tol)
            }
            ModelConfig::PotentialHole { width, .. } => {
                quad::integrate_split(&source, 0.0, width + reach, &[x, width], tol)
            }
        };
        self.prefactor * integral.value
    }
}

/// Builds the evaluator for the first-order correction around the bound-state
/// condensate of `bs`.
pub fn first_order_correction(bs: &BoundStateSolution) -> Result<FirstOrderCorrection> {
    let green = greens_function(bs.model, bs.params)?;
    let e2 = bs.epsilon * bs.epsilon;
    Ok(FirstOrderCorrection {
        bs: *bs,
        green,
        prefactor: -e2 * (bs.a / (4.0 * bs.b)).sqrt(),
        cubic_weight: bs.params.lambda * bs.a / (4.0 * bs.b),
    })
}

/// Coefficient c of the near-threshold energy law E ≈ -c·δ², where δ is the
/// coupling excess over its critical value (κ - κ_c, or U₀ - U₀c for the
/// hole).
pub fn threshold_expansion(config: ModelConfig, params: PhysicalParams) -> Result<f64> {
    config.validate()?;
    let m = params.m;
    let lambda = params.lambda;
    Ok(match config {
        ModelConfig::Delta { .. } => 2.0 * m / lambda,
        ModelConfig::RobinDirichlet { length, .. } => {
            let s = m * length;
            8.0 * m * s.sinh().powi(4)
                / (lambda * (12.0 * s - 8.0 * (2.0 * s).sinh() + (4.0 * s).sinh()))
        }
        ModelConfig::PotentialHole { width, .. } => {
            let u0c = condensate::hole_threshold(width, m)?;
            let r = width;
            m * (m + r * u0c).powi(2)
                / (2.0 * lambda * u0c * (m * m + 2.0 * u0c + 3.0 * m * r * u0c))
        }
    })
}
