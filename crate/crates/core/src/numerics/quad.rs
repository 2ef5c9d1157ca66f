//! Adaptive Gauss–Legendre quadrature on finite intervals, with substitutions
//! for exponentially and algebraically decaying semi-infinite tails.

use std::sync::OnceLock;

const PANEL_ORDER: usize = 15;
const MAX_DEPTH: usize = 48;

/// Value of an integral together with an accumulated error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1], found by
/// Newton iteration on the Legendre recurrence.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 1..n {
                let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn panel() -> &'static (Vec<f64>, Vec<f64>) {
    static PANEL: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    PANEL.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

fn fixed_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = panel();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        sum += w * f(mid + half * x);
    }
    sum * half
}

fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: usize,
    out: &mut QuadResult,
) {
    let mid = 0.5 * (a + b);
    let left = fixed_panel(f, a, mid);
    let right = fixed_panel(f, mid, b);
    let err = (left + right - whole).abs();
    // Panel sums carry a few ulps of rounding, and below that level the
    // whole-versus-halves test can never settle; splitting further would only
    // double the work, so the floor caps how small a panel's share of the
    // tolerance is allowed to get.
    let noise = 1e-14 * (whole.abs() + left.abs() + right.abs());
    if err <= tol.max(noise) || depth >= MAX_DEPTH {
        out.value += left + right;
        out.error += err;
        return;
    }
    adapt(f, a, mid, left, 0.5 * tol, depth + 1, out);
    adapt(f, mid, b, right, 0.5 * tol, depth + 1, out);
}

/// Integrates `f` over [a, b] by adaptive bisection of 15-point panels,
/// splitting until each panel's whole-versus-halves discrepancy is below its
/// share of `tol` (an absolute tolerance).
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> QuadResult {
    let mut out = QuadResult { value: 0.0, error: 0.0 };
    if a == b {
        return out;
    }
    let mid = 0.5 * (a + b);
    adapt(f, a, mid, fixed_panel(f, a, mid), 0.5 * tol, 0, &mut out);
    adapt(f, mid, b, fixed_panel(f, mid, b), 0.5 * tol, 0, &mut out);
    out
}

/// Integrates `f` over [a, b] with breakpoints inserted at the interior
/// points of `splits`, so kinks land on panel boundaries.
pub fn integrate_split<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    splits: &[f64],
    tol: f64,
) -> QuadResult {
    let mut pts: Vec<f64> = splits.iter().copied().filter(|x| *x > a && *x < b).collect();
    pts.sort_by(|u, v| u.partial_cmp(v).unwrap());
    pts.insert(0, a);
    pts.push(b);
    let n = (pts.len() - 1) as f64;
    let mut out = QuadResult { value: 0.0, error: 0.0 };
    for w in pts.windows(2) {
        let piece = integrate(f, w[0], w[1], tol / n);
        out.value += piece.value;
        out.error += piece.error;
    }
    out
}

/// Integrates `f` over [a, ∞) for integrands decaying at least like
/// exp(-rate·x), via the substitution x = a - ln(u)/rate on u ∈ (0, 1].
pub fn integrate_exp_tail<F: Fn(f64) -> f64>(f: &F, a: f64, rate: f64, tol: f64) -> QuadResult {
    integrate(&|u: f64| f(a - u.ln() / rate) / (rate * u), 0.0, 1.0, tol)
}

/// Integrates `f` over [a, ∞) for integrands decaying at least like 1/x²,
/// via the substitution x = 1/u on u ∈ (0, 1/a].
pub fn integrate_inv_tail<F: Fn(f64) -> f64>(f: &F, a: f64, tol: f64) -> QuadResult {
    assert!(a > 0.0);
    integrate(&|u: f64| f(1.0 / u) / (u * u), 0.0, 1.0 / a, tol)
}
