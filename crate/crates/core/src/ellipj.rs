//! Jacobi elliptic functions of a real argument, computed by the descending
//! Landen transformation, together with the complete elliptic integral K(k)
//! from the arithmetic–geometric mean.

use crate::error::{Error, Result};

/// Distance from a pole of sc or ds below which evaluation is refused.
pub const POLE_PROXIMITY: f64 = 1e-9;

const LANDEN_CUTOFF: f64 = 1e-15;
const MAX_LANDEN: usize = 32;

/// An elliptic modulus k ∈ [0, 1] paired with its complement k' = √(1-k²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModulus {
    k: f64,
    kprime: f64,
}

impl EllipticModulus {
    pub fn new(k: f64) -> Result<Self> {
        if !k.is_finite() || !(0.0..=1.0).contains(&k) {
            return Err(Error::Domain(format!(
                "elliptic modulus must lie in [0, 1], got {k}"
            )));
        }
        Ok(Self {
            k,
            kprime: (1.0 - k * k).max(0.0).sqrt(),
        })
    }

    pub fn k(self) -> f64 {
        self.k
    }

    pub fn kprime(self) -> f64 {
        self.kprime
    }

    /// The complementary modulus, with the roles of k and k' exchanged.
    pub fn complement(self) -> Self {
        Self {
            k: self.kprime,
            kprime: self.k,
        }
    }
}

/// The triple (sn, cn, dn) at a common argument and modulus.
#[derive(Debug, Clone, Copy)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// Complete elliptic integral of the first kind, K(k) = π/(2·agm(1, k')).
pub fn complete_k(modulus: EllipticModulus) -> Result<f64> {
    if modulus.kprime == 0.0 {
        return Err(Error::Domain("K(k) diverges as k -> 1".into()));
    }
    let mut a = 1.0_f64;
    let mut g = modulus.kprime;
    for _ in 0..64 {
        if (a - g).abs() <= 1e-16 * a {
            break;
        }
        let an = 0.5 * (a + g);
        g = (a * g).sqrt();
        a = an;
    }
    Ok(std::f64::consts::FRAC_PI_2 / a)
}

/// Evaluates sn, cn, dn at argument `z`.
///
/// The modulus is driven to zero by descending Landen steps
/// k_{n+1} = (1-k'_n)/(1+k'_n), z_{n+1} = z_n/(1+k_{n+1}); the residual
/// circular seed is then lifted back through the Gauss transformation
/// sn = (1+k₁)s/(1+k₁s²), cn = c·d/(1+k₁s²), dn = (1-k₁s²)/(1+k₁s²),
/// which preserves sn²+cn² = 1 and dn²+k²sn² = 1 exactly.
pub fn jacobi_triple(z: f64, modulus: EllipticModulus) -> JacobiTriple {
    if modulus.k == 1.0 {
        let sech = 1.0 / z.cosh();
        return JacobiTriple {
            sn: z.tanh(),
            cn: sech,
            dn: sech,
        };
    }
    let mut steps = [0.0_f64; MAX_LANDEN];
    let mut depth = 0;
    let mut kn = modulus.k;
    let mut kpn = modulus.kprime;
    let mut zn = z;
    while kn > LANDEN_CUTOFF && depth < MAX_LANDEN {
        let k1 = (1.0 - kpn) / (1.0 + kpn);
        zn /= 1.0 + k1;
        steps[depth] = k1;
        depth += 1;
        kn = k1;
        kpn = (1.0 - k1 * k1).max(0.0).sqrt();
    }
    let mut s = zn.sin();
    let mut c = zn.cos();
    let mut d = (1.0 - kn * kn * s * s).sqrt();
    for &k1 in steps[..depth].iter().rev() {
        let denom = 1.0 + k1 * s * s;
        let sn = (1.0 + k1) * s / denom;
        let cn = c * d / denom;
        let dn = (1.0 - k1 * s * s) / denom;
        s = sn;
        c = cn;
        d = dn;
    }
    JacobiTriple { sn: s, cn: c, dn: d }
}

/// sc(z, k) = sn/cn, refusing arguments within [`POLE_PROXIMITY`] of the
/// poles z ≡ K(k) (mod 2K(k)).
pub fn jacobi_sc(z: f64, modulus: EllipticModulus) -> Result<f64> {
    if modulus.k < 1.0 {
        let quarter = complete_k(modulus)?;
        let pole = quarter + 2.0 * quarter * ((z - quarter) / (2.0 * quarter)).round();
        let distance = (z - pole).abs();
        if distance < POLE_PROXIMITY {
            return Err(Error::PoleProximity { z, pole, distance });
        }
    }
    let t = jacobi_triple(z, modulus);
    Ok(t.sn / t.cn)
}

/// ds(z, k) = dn/sn, refusing arguments within [`POLE_PROXIMITY`] of the
/// poles z ≡ 0 (mod 2K(k)).
pub fn jacobi_ds(z: f64, modulus: EllipticModulus) -> Result<f64> {
    let pole = if modulus.k < 1.0 {
        let quarter = complete_k(modulus)?;
        2.0 * quarter * (z / (2.0 * quarter)).round()
    } else {
        0.0
    };
    let distance = (z - pole).abs();
    if distance < POLE_PROXIMITY {
        return Err(Error::PoleProximity { z, pole, distance });
    }
    let t = jacobi_triple(z, modulus);
    Ok(t.dn / t.sn)
}
