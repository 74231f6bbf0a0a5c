//! Numerical toolkit for the Dirichlet divisor problem and the Voronoi
//! summation formula.
//!
//! The crate computes divisor-function summatory quantities and verifies, to
//! stated tolerances, the chain of identities that connects the Lambert
//! series
//!
//! ```text
//! Theta(t) = sum_{n>=1} d(n) e^{-nt} = sum_{n>=1} 1/(e^{nt} - 1)
//! ```
//!
//! to the two-sided Voronoi summation formula
//!
//! ```text
//! sum d(n) f~(n) = int_0^inf (ln k + 2 gamma) f~(k) dk + f~(0)/4
//!                + 2 pi sum d(n) int_0^inf [(2/pi) K0 - Y0](4 pi sqrt(nk)) f~(k) dk
//! ```
//!
//! for compactly supported test functions `f` with Laplace transform `f~`.
//!
//! Module map:
//!
//! * [`arith`] — divisor sieve, summatory function `D(x)`, error term `Delta(x)`
//! * [`special`] — digamma, Bessel `Y0`/`K0`, scaled exponential integrals
//! * [`quadrature`] — adaptive Gauss-Kronrod integration, Laplace and
//!   Fourier-cosine transforms on `(0, inf)`
//! * [`accel`] — series-tail estimation and alternating-sum acceleration
//! * [`poisson`] — two-sided Dixon-Ferrar Poisson summation engine
//! * [`theta`] — three evaluation routes for `Theta(t)` and their residuals
//! * [`voronoi`] — the summation formula itself, with cross-route checks
//!
//! Everything is pure `f64`; all high-precision reference values live in
//! offline fixture tables under `tests/fixtures/`.

// quadrature nodes and math constants keep their full published digits,
// and `!(x > 0.0)` guards deliberately reject NaN along with the sign
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod accel;
pub mod arith;
pub mod error;
pub mod poisson;
pub mod quadrature;
pub mod special;
pub mod theta;
pub mod voronoi;

pub use arith::{DivisorSummary, DivisorTable};
pub use error::{Error, Result};
pub use poisson::SummandSpec;
pub use quadrature::{DecayHint, IntegrandSpec, QuadratureResult, Singularity};
pub use special::EvalResult;
pub use theta::ThetaDecomposition;
pub use voronoi::{TestFunction, VoronoiReport};

/// Euler's constant to 30 significant digits (rounds to the nearest `f64`).
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;
