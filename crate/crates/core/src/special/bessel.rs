//! Bessel functions `Y0` (Neumann) and `K0` (McDonald) on the positive axis.
//!
//! Branch layout:
//!
//! * power/log series near the origin (no cancellation worth worrying about
//!   below the chosen cutoffs),
//! * Chebyshev fits through the awkward middle range where neither series
//!   nor asymptotics reach 1e-12,
//! * for large `x`, a Chebyshev fit in `u = 1/x`: exponential-scaled for
//!   `K0`, amplitude/phase for `Y0`.
//!
//! Coefficient tables live in [`super::tables`] with their generator script.

use crate::error::{Error, Result};
use crate::special::tables;
use crate::special::EvalResult;
use crate::EULER_GAMMA;
use std::f64::consts::{FRAC_PI_4, PI};

const SERIES_EPS: f64 = 1e-18;

/// Clenshaw evaluation with the `c0/2` convention.
fn cheb_eval(cs: &[f64], range: (f64, f64), x: f64) -> f64 {
    let (a, b) = range;
    let t = (2.0 * x - (a + b)) / (b - a);
    let t2 = 2.0 * t;
    let mut d = 0.0;
    let mut dd = 0.0;
    for &c in cs[1..].iter().rev() {
        let tmp = d;
        d = t2 * d - dd + c;
        dd = tmp;
    }
    t * d - dd + 0.5 * cs[0]
}

fn j0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut s = 1.0;
    for k in 1..80u32 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        s += term;
        if term.abs() < SERIES_EPS {
            break;
        }
    }
    s
}

fn i0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut s = 1.0;
    for k in 1..80u32 {
        let kf = k as f64;
        term *= q / (kf * kf);
        s += term;
        if term < SERIES_EPS * s {
            break;
        }
    }
    s
}

fn y0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut s = 0.0;
    for k in 1..80u32 {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        let add = if k % 2 == 1 {
            term * harmonic
        } else {
            -term * harmonic
        };
        s += add;
        if term * harmonic < SERIES_EPS {
            break;
        }
    }
    (2.0 / PI) * (((0.5 * x).ln() + EULER_GAMMA) * j0_series(x) + s)
}

fn k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut s = 0.0;
    for k in 1..80u32 {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        s += term * harmonic;
        if term * harmonic < SERIES_EPS * s.max(1.0) {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0_series(x) + s
}

/// `Y0(x)` for `x > 0` to better than 1e-12 relative (phase-limited near
/// the zeros at very large arguments).
pub fn bessel_y0(x: f64) -> Result<EvalResult> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("bessel_y0 requires x > 0 (got {x})")));
    }
    if x < tables::Y0_MID_RANGE.0 {
        let value = y0_series(x);
        return Ok(EvalResult {
            value,
            abs_error_estimate: 2e-15 * (value.abs() + 1.0),
        });
    }
    if x <= tables::Y0_MID_RANGE.1 {
        let value = cheb_eval(&tables::Y0_MID, tables::Y0_MID_RANGE, x);
        return Ok(EvalResult {
            value,
            abs_error_estimate: 1e-15,
        });
    }
    let u = 1.0 / x;
    let amp = cheb_eval(&tables::Y0_FAR_AMP, tables::Y0_FAR_AMP_RANGE, u);
    let phase = cheb_eval(&tables::Y0_FAR_PHASE, tables::Y0_FAR_PHASE_RANGE, u);
    let envelope = amp / x.sqrt();
    let value = envelope * (x - FRAC_PI_4 + phase).sin();
    Ok(EvalResult {
        value,
        // phase reduction in f64 dominates: ~x*eps radians of the envelope
        abs_error_estimate: (2e-16 * x + 1e-15) * envelope,
    })
}

/// `K0(x)` for `x > 0`; underflows to an exact 0 (with a nonzero error
/// bound as the flag) once `e^{-x}` leaves the normal range.
pub fn bessel_k0(x: f64) -> Result<EvalResult> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("bessel_k0 requires x > 0 (got {x})")));
    }
    if x > 705.0 {
        return Ok(EvalResult {
            value: 0.0,
            abs_error_estimate: 1e-305,
        });
    }
    let value = if x < tables::K0_MID_RANGE.0 {
        k0_series(x)
    } else if x <= tables::K0_MID_RANGE.1 {
        cheb_eval(&tables::K0_MID, tables::K0_MID_RANGE, x) * (-x).exp() / x.sqrt()
    } else {
        let u = 1.0 / x;
        cheb_eval(&tables::K0_FAR, tables::K0_FAR_RANGE, u) * (-x).exp() * u.sqrt()
    };
    Ok(EvalResult {
        value,
        abs_error_estimate: 4e-15 * value,
    })
}
