//! Bracketed root finding by bisection.

use crate::error::{Error, Result};

/// Bisects `f` on [lo, hi] down to an interval of width `xtol`. The endpoint
/// values must bracket a sign change.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, xtol: f64) -> Result<f64> {
    let mut lo = lo;
    let mut hi = hi;
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
        return Err(Error::NoSolution(format!(
            "no sign change on [{lo}, {hi}]: f(lo)={flo:e}, f(hi)={fhi:e}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= xtol || mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if flo.signum() != fm.signum() {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Ok(0.5 * (lo + hi))
}
