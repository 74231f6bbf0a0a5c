//! Digamma function on the positive real axis and its real part along the
//! line `1 + iy`.
//!
//! Both evaluations shift the argument by the recurrence
//! `psi(z+1) = psi(z) + 1/z` until `|z| >= 12` and then apply the Stirling
//! asymptotic series with Bernoulli coefficients through `B12`.

use crate::error::{Error, Result};
use crate::special::EvalResult;
use num_complex::Complex64;

/// `B_{2k} / (2k)` for `k = 1..=6`.
const BERN_OVER_2K: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
];

const SHIFT_RADIUS: f64 = 12.0;

/// `psi(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<EvalResult> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "digamma requires x > 0 (got {x}); poles at non-positive integers"
        )));
    }
    let mut shift = 0.0;
    let mut z = x;
    while z < SHIFT_RADIUS {
        shift -= 1.0 / z;
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut s = z.ln() - 0.5 * inv;
    let mut term = inv2;
    for c in BERN_OVER_2K {
        s -= c * term;
        term *= inv2;
    }
    let value = shift + s;
    Ok(EvalResult {
        value,
        abs_error_estimate: 4e-15 * (1.0 + value.abs()),
    })
}

/// `Re psi(1 + iy)`; even in `y` by conjugate symmetry, so `|y|` is used.
pub fn digamma_re_1iy(y: f64) -> EvalResult {
    let y = y.abs();
    let mut z = Complex64::new(1.0, y);
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm_sqr() < SHIFT_RADIUS * SHIFT_RADIUS {
        shift -= z.inv();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut s = z.ln() - 0.5 * inv;
    let mut term = inv2;
    for c in BERN_OVER_2K {
        s -= c * term;
        term *= inv2;
    }
    let value = (shift + s).re;
    EvalResult {
        value,
        abs_error_estimate: 1e-14 * (1.0 + value.abs()),
    }
}
