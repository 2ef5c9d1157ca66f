//! Adaptive Dormand–Prince 5(4) integration for small first-order systems.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 6] = [
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates y' = f(x, y) from `x0` to `x1` (x1 > x0) and returns y(x1),
/// keeping the per-step error below rtol·|y| + atol componentwise.
pub fn integrate<const N: usize, F>(
    f: &F,
    x0: f64,
    x1: f64,
    y0: [f64; N],
    rtol: f64,
    atol: f64,
) -> Result<[f64; N]>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let span = x1 - x0;
    if span <= 0.0 {
        return if span == 0.0 {
            Ok(y0)
        } else {
            Err(Error::OdeFailure(format!("backward span [{x0}, {x1}]")))
        };
    }
    let mut x = x0;
    let mut y = y0;
    let mut h = span / 128.0;
    let h_min = span * 1e-14;
    let mut k = [[0.0; N]; 7];
    for _ in 0..5_000_000 {
        if x >= x1 {
            return Ok(y);
        }
        h = h.min(x1 - x);
        k[0] = f(x, &y);
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s - 1][j];
                if a != 0.0 {
                    for i in 0..N {
                        ys[i] += h * a * kj[i];
                    }
                }
            }
            k[s] = f(x + C[s] * h, &ys);
        }
        let mut y5 = y;
        let mut err_norm = 0.0_f64;
        for i in 0..N {
            let mut d5 = 0.0;
            let mut d4 = 0.0;
            for s in 0..7 {
                d5 += B5[s] * k[s][i];
                d4 += B4[s] * k[s][i];
            }
            y5[i] += h * d5;
            let scale = atol + rtol * y[i].abs().max(y5[i].abs());
            err_norm = err_norm.max((h * (d5 - d4)).abs() / scale);
        }
        if err_norm <= 1.0 {
            x += h;
            y = y5;
        }
        let fac = if err_norm > 0.0 {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= fac;
        if h < h_min {
            return Err(Error::OdeFailure(format!(
                "step underflow at x = {x} (h = {h:e})"
            )));
        }
    }
    Err(Error::OdeFailure(format!("step budget exhausted at x = {x}")))
}

/// Like [`integrate`], but restarts the stepper at each interior point of
/// `breaks`, so discontinuities in f's x-dependence sit on step boundaries.
pub fn integrate_piecewise<const N: usize, F>(
    f: &F,
    x0: f64,
    x1: f64,
    y0: [f64; N],
    rtol: f64,
    atol: f64,
    breaks: &[f64],
) -> Result<[f64; N]>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|x| *x > x0 && *x < x1).collect();
    pts.sort_by(|u, v| u.partial_cmp(v).unwrap());
    pts.push(x1);
    let mut x = x0;
    let mut y = y0;
    for p in pts {
        y = integrate(f, x, p, y, rtol, atol)?;
        x = p;
    }
    Ok(y)
}
