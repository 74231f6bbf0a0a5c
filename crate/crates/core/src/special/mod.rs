//! Special functions needed by the identity chain: digamma (real line and
//! the `1 + iy` line), Bessel `Y0`/`K0`, and the scaled exponential
//! integrals with their combined kernel.
//!
//! All working precision is binary64; every function is validated against
//! 25-digit oracle tables under `tests/fixtures/` to 1e-12 relative.

mod bessel;
mod digamma;
mod expint;
mod tables;

pub use bessel::{bessel_k0, bessel_y0};
pub use digamma::{digamma, digamma_re_1iy};
pub use expint::{e1_scaled, ei_combo, ei_scaled, EI_COMBO_CROSSOVER};

/// A function value with a conservative absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    /// Claimed bound on the absolute error; series-remainder based, not
    /// statistical.
    pub abs_error_estimate: f64,
}

impl EvalResult {
    /// True when the value underflowed to zero but the quantity is not
    /// actually zero (used by `K0` past the exponential range).
    pub fn underflowed(&self) -> bool {
        self.value == 0.0 && self.abs_error_estimate > 0.0
    }
}

impl From<EvalResult> for f64 {
    fn from(r: EvalResult) -> f64 {
        r.value
    }
}
