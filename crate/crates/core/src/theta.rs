//! Three independent evaluation routes for the Lambert series
//! `Theta(t) = sum d(n) e^{-nt} = sum 1/(e^{nt}-1)` and their residuals:
//!
//! * `theta_direct` — both series forms, cross-checked at every call;
//! * `theta_wigert` — Weyl term minus a digamma sum;
//! * `theta_weyl` + `theta_osc` — smooth part plus the divisor-weighted
//!   combined-exponential-integral sum.
//!
//! The module also houses the regularized summand `h_reg` that feeds the
//! Poisson engine.

use crate::accel::{divisor_weighted_tail, zeta_tail, KahanSum};
use crate::arith::divisor_sieve;
use crate::error::{Error, Result};
use crate::special::{digamma_re_1iy, ei_combo, EI_COMBO_CROSSOVER};
use crate::EULER_GAMMA;
use std::f64::consts::PI;

/// One evaluation point of all theta routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaDecomposition {
    pub t: f64,
    pub theta_direct: f64,
    pub theta_wigert: f64,
    pub theta_weyl: f64,
    pub theta_osc: f64,
    /// `|theta_direct - theta_wigert|`
    pub residual_wigert: f64,
    /// `|theta_direct - theta_weyl - theta_osc|`
    pub residual_decomp: f64,
}

/// Regularized summand `h(x) = 1/(e^x - 1) - e^{-x}/x`.
///
/// Near zero this cancels to `1/2 - 5x/12 + O(x^2)`; the stable form
/// `e^{-x} (1/2 + sum B_{2k} x^{2k-1}/(2k)!)` is used below the crossover.
pub fn h_reg(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("h_reg requires x > 0 (got {x})")));
    }
    if x < 0.5 {
        let x2 = x * x;
        // B2/2!, B4/4!, B6/6!, B8/8!, B10/10!, B12/12!, B14/14!
        let poly = 0.5
            + x * (1.0 / 12.0
                + x2 * (-1.0 / 720.0
                    + x2 * (1.0 / 30240.0
                        + x2 * (-1.0 / 1209600.0
                            + x2 * (1.0 / 47900160.0
                                + x2 * (-691.0 / 1307674368000.0
                                    + x2 * (1.0 / 74724249600.0)))))));
        return Ok((-x).exp() * poly);
    }
    if x > 700.0 {
        return Ok(0.0);
    }
    Ok(x.exp_m1().recip() - (-x).exp() / x)
}

/// Weyl (smooth) part `-ln t / t + gamma / t + 1/4`.
pub fn theta_weyl(t: f64) -> f64 {
    (-t.ln() + EULER_GAMMA) / t + 0.25
}

/// Truncation length for the divisor-weighted exponential series: smallest
/// `N` with `2 sqrt(N+1) e^{-(N+1)t} / (1 - e^{-t}) < tol/2`.
fn direct_series_length(t: f64, tol: f64) -> u64 {
    let denom = -(-t).exp_m1(); // 1 - e^{-t}
    let bound = |n: f64| 2.0 * (n + 1.0).sqrt() * (-(n + 1.0) * t).exp() / denom;
    let mut n = 8u64;
    while bound(n as f64) >= 0.5 * tol {
        n *= 2;
        if n > (1 << 34) {
            break;
        }
    }
    // walk back down to the actual threshold
    let mut lo = n / 2;
    while lo < n {
        let mid = (lo + n) / 2;
        if bound(mid as f64) < 0.5 * tol {
            n = mid;
        } else {
            lo = mid + 1;
        }
        if lo >= n {
            break;
        }
    }
    n.max(8)
}

/// Direct Lambert-series evaluation. Both forms are computed and must agree
/// to `tol`; the geometric form is returned.
pub fn theta_direct(t: f64, tol: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("theta_direct requires t > 0 (got {t})")));
    }
    if !(tol >= 1e-13) {
        return Err(Error::InvalidInput(format!("tolerance {tol} too small")));
    }
    let n = direct_series_length(t, tol);
    if n > (1 << 30) {
        return Err(Error::NonConvergence(format!(
            "theta_direct would need {n} terms at t = {t}"
        )));
    }
    let table = divisor_sieve(n)?;
    let mut divisor_form = KahanSum::default();
    let mut geometric_form = KahanSum::default();
    for k in 1..=n {
        let kt = k as f64 * t;
        if kt > 700.0 {
            break;
        }
        divisor_form.add(table.d(k) as f64 * (-kt).exp());
        geometric_form.add(kt.exp_m1().recip());
    }
    let d_val = divisor_form.value();
    let g_val = geometric_form.value();
    let slack = 2.0 * tol + 1e-14 * d_val.abs() * (n as f64).sqrt();
    if (d_val - g_val).abs() > slack {
        return Err(Error::Inconsistency(format!(
            "Lambert series forms disagree at t = {t}: {d_val} vs {g_val}"
        )));
    }
    Ok(g_val)
}

/// Wigert route: `theta_weyl(t) - (2/t) sum_n [Re psi(1 + 2 pi n i/t) - ln(2 pi n/t)]`.
///
/// The summand behaves like `1/(12 y^2) + 1/(120 y^4) + ...` in
/// `y = 2 pi n / t`, so past `N` the sum is completed with zeta tails; the
/// first omitted order bounds the truncation error.
pub fn theta_wigert(t: f64, tol: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("theta_wigert requires t > 0 (got {t})")));
    }
    let c = t / (2.0 * PI); // y_n = n / c
    let mut n = 32u64.max(t.ceil() as u64);
    loop {
        let err_tail = (2.0 / t) * (c.powi(8) / 240.0) * zeta_tail(8.0, n);
        if err_tail < 0.5 * tol || n > (1 << 22) {
            let mut sum = KahanSum::default();
            for k in 1..=n {
                let y = k as f64 / c;
                sum.add(digamma_re_1iy(y).value - y.ln());
            }
            let tail = c.powi(2) / 12.0 * zeta_tail(2.0, n)
                + c.powi(4) / 120.0 * zeta_tail(4.0, n)
                + c.powi(6) / 252.0 * zeta_tail(6.0, n);
            if err_tail >= 0.5 * tol {
                return Err(Error::NonConvergence(format!(
                    "theta_wigert tail stuck at {err_tail} (t = {t})"
                )));
            }
            return Ok(theta_weyl(t) - (2.0 / t) * (sum.value() + tail));
        }
        n *= 2;
    }
}

/// Oscillatory route: `-(2/t) sum_n d(n) h(4 pi^2 n / t)` with `h` the
/// combined exponential integral. Terms past `N` follow the even
/// asymptotic series of `h`, so the tail reduces to the exactly known
/// Dirichlet series `sum d(n)/n^{2m} = zeta(2m)^2`.
pub fn theta_osc(t: f64, tol: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("theta_osc requires t > 0 (got {t})")));
    }
    if t < 1e-300 {
        // |theta_osc(t)| <= C t; below here even the 2/t prefactor
        // arithmetic degenerates
        return Ok(0.0);
    }
    let c = t / (4.0 * PI * PI); // argument is n / c
    let zeta2_sq = PI.powi(4) / 36.0;
    let zeta4_sq = PI.powi(8) / 8100.0;
    let zeta6_sq = PI.powi(12) / 893025.0;

    let mut n = 32u64.max((EI_COMBO_CROSSOVER * c).ceil() as u64 + 8);
    loop {
        let (t8, t8_bound) = divisor_weighted_tail(8.0, n)?;
        let err_tail = (2.0 / t) * 10080.0 * c.powi(8) * (t8 + t8_bound);
        if err_tail < 0.5 * tol {
            let table = divisor_sieve(n)?;
            let mut sum = KahanSum::default();
            let mut p2 = KahanSum::default();
            let mut p4 = KahanSum::default();
            let mut p6 = KahanSum::default();
            for k in 1..=n {
                let d = table.d(k) as f64;
                let kf = k as f64;
                sum.add(d * ei_combo(kf / c)?.value);
                p2.add(d / (kf * kf));
                p4.add(d / kf.powi(4));
                p6.add(d / kf.powi(6));
            }
            let tail = 2.0 * c.powi(2) * (zeta2_sq - p2.value())
                + 12.0 * c.powi(4) * (zeta4_sq - p4.value())
                + 240.0 * c.powi(6) * (zeta6_sq - p6.value());
            return Ok(-(2.0 / t) * (sum.value() + tail));
        }
        if n > (1 << 22) {
            return Err(Error::NonConvergence(format!(
                "theta_osc tail stuck at {err_tail} (t = {t})"
            )));
        }
        n *= 2;
    }
}

/// All routes and residuals at one `t`.
pub fn decompose(t: f64, tol: f64) -> Result<ThetaDecomposition> {
    let theta_direct = theta_direct(t, tol)?;
    let theta_wigert = theta_wigert(t, tol)?;
    let weyl = theta_weyl(t);
    let theta_osc = theta_osc(t, tol)?;
    Ok(ThetaDecomposition {
        t,
        theta_direct,
        theta_wigert,
        theta_weyl: weyl,
        theta_osc,
        residual_wigert: (theta_direct - theta_wigert).abs(),
        residual_decomp: (theta_direct - weyl - theta_osc).abs(),
    })
}

/// `sum_{n>=1} ln(1 + (t/(2 pi n))^2)`, evaluated with zeta tails; equals
/// `t/2 + ln(1 - e^{-t}) - ln t` (the sinh product identity).
pub fn log_sinh_product_series(t: f64, tol: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain("t must be positive".into()));
    }
    let c = (t / (2.0 * PI)).powi(2); // term = ln(1 + c/n^2)
    let mut n = 32u64.max(t.ceil() as u64);
    loop {
        let err_tail = c.powi(4) / 4.0 * zeta_tail(8.0, n);
        if err_tail < 0.5 * tol {
            let mut sum = KahanSum::default();
            for k in 1..=n {
                let kf = k as f64;
                sum.add((c / (kf * kf)).ln_1p());
            }
            let tail = c * zeta_tail(2.0, n) - c * c / 2.0 * zeta_tail(4.0, n)
                + c.powi(3) / 3.0 * zeta_tail(6.0, n);
            return Ok(sum.value() + tail);
        }
        if n > (1 << 22) {
            return Err(Error::NonConvergence("sinh product series stuck".into()));
        }
        n *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_reg_domain() {
        assert!(h_reg(0.0).is_err());
        assert!(h_reg(-1.0).is_err());
    }

    #[test]
    fn h_reg_near_zero_expansion() {
        // 1/2 - 5x/12 + x^2/6 to leading orders
        let x = 1e-6;
        let expect = 0.5 - 5.0 * x / 12.0;
        assert!((h_reg(x).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn h_reg_at_one() {
        let e = std::f64::consts::E;
        let expect = 1.0 / (e - 1.0) - 1.0 / e;
        assert!((h_reg(1.0).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn h_reg_decays_exponentially() {
        let v = h_reg(50.0).unwrap();
        assert!(v > 0.0 && v < 2.0 * (-50.0f64).exp());
    }

    #[test]
    fn h_reg_branches_agree() {
        for x in [0.3f64, 0.45, 0.49999, 0.5, 0.50001, 0.7] {
            let direct = 1.0 / x.exp_m1() - (-x).exp() / x;
            assert!(
                (h_reg(x).unwrap() - direct).abs() < 3e-15,
                "mismatch at {x}"
            );
        }
    }

    #[test]
    fn theta_direct_both_forms_agree_and_match_oracle() {
        // Theta(1) from the 25-digit offline table
        let oracle = 0.8202595115424168232662385;
        assert!((theta_direct(1.0, 1e-12).unwrap() - oracle).abs() < 1e-12);
    }

    #[test]
    fn theta_direct_small_t_term_budget() {
        // below t = 1e-3 the truncation bound needs tens of thousands of
        // divisor-weighted terms and must still be satisfiable
        let direct = theta_direct(5e-4, 1e-9).unwrap();
        let wigert = theta_wigert(5e-4, 1e-9).unwrap();
        assert!((direct - wigert).abs() < 1e-8, "{direct} vs {wigert}");
    }

    #[test]
    fn theta_direct_large_t_asymptotics() {
        let t = 10.0;
        let v = theta_direct(t, 1e-13).unwrap();
        let leading = (-t).exp() + 2.0 * (-2.0 * t).exp();
        assert!((v - leading).abs() < 1e-12);
    }

    #[test]
    fn theta_weyl_values() {
        assert!((theta_weyl(1.0) - (EULER_GAMMA + 0.25)).abs() < 1e-15);
        let e = std::f64::consts::E;
        assert!((theta_weyl(e) - (-1.0 / e + EULER_GAMMA / e + 0.25)).abs() < 1e-15);
        // t -> 0 dominance: t * theta_weyl(t) -> -ln t + gamma
        let t = 1e-4;
        let rel = (t * theta_weyl(t)) / ((1.0 / t).ln() + EULER_GAMMA) - 1.0;
        assert!(rel.abs() < 1e-5, "rel = {rel}"); // exact gap is t^2/4 / (..) ~ 2.6e-6
    }

    #[test]
    fn wigert_route_matches_direct() {
        for t in [0.5, 1.0, 5.0] {
            let a = theta_direct(t, 1e-11).unwrap();
            let b = theta_wigert(t, 1e-11).unwrap();
            assert!((a - b).abs() < 1e-10, "t = {t}: {a} vs {b}");
        }
    }

    #[test]
    fn weyl_plus_osc_matches_wigert() {
        for t in [0.5, 1.0, 2.0] {
            let w = theta_wigert(t, 1e-10).unwrap();
            let s = theta_weyl(t) + theta_osc(t, 1e-10).unwrap();
            assert!((w - s).abs() < 1e-9, "t = {t}: {w} vs {s}");
        }
    }

    #[test]
    fn osc_term_is_small_at_small_t() {
        let t = 0.01;
        let v = theta_osc(t, 1e-10).unwrap();
        assert!(v.abs() <= t, "theta_osc({t}) = {v}");
    }

    #[test]
    fn decompose_residuals() {
        let d = decompose(1.0, 1e-10).unwrap();
        assert!(d.residual_wigert < 1e-9);
        assert!(d.residual_decomp < 1e-9);
    }

    #[test]
    fn theta_monotone_decreasing() {
        let mut prev = f64::INFINITY;
        let mut t = 0.1;
        while t < 10.0 {
            let v = theta_direct(t, 1e-10).unwrap();
            assert!(v < prev);
            prev = v;
            t *= 1.6;
        }
    }

    #[test]
    fn sinh_product_identity() {
        for t in [0.5f64, 1.0, 2.0] {
            let series = log_sinh_product_series(t, 1e-10).unwrap();
            let closed = 0.5 * t + (-(-t).exp_m1()).ln() - t.ln();
            assert!((series - closed).abs() < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn wigert_single_summand_sanity() {
        // the first Wigert summand at t = 1: positive and within a fraction
        // of a percent of the leading asymptotic 1/(12 y^2)
        let y = 2.0 * PI;
        let g = crate::special::digamma_re_1iy(y).value - y.ln();
        assert!(g > 0.0);
        assert!((g * 12.0 * y * y - 1.0).abs() < 0.01, "ratio off: {}", g * 12.0 * y * y);
    }

    #[test]
    fn decompose_large_t_absolute_residuals() {
        // at t = 20 all routes agree to better than 1e-12 absolute even
        // though Theta itself is ~2e-9
        let d = decompose(20.0, 1e-12).unwrap();
        assert!(d.theta_direct > 0.0 && d.theta_direct < 2.0 * (-20.0f64).exp());
        assert!(d.residual_wigert < 1e-12, "wigert residual {}", d.residual_wigert);
        assert!(d.residual_decomp < 1e-12, "decomp residual {}", d.residual_decomp);
    }

    #[test]
    fn osc_underflow_guard() {
        assert_eq!(theta_osc(1e-310, 1e-10).unwrap(), 0.0);
        assert!(theta_osc(0.0, 1e-10).is_err());
    }

    #[test]
    fn digamma_envelope_constant_validated() {
        // |Re psi(1+iy) - ln y| <= 1/(10 y^2) for y >= 2
        let mut y = 2.0;
        while y < 3000.0 {
            let g = crate::special::digamma_re_1iy(y).value - y.ln();
            assert!(g.abs() <= 1.0 / (10.0 * y * y), "violated at y = {y}");
            y *= 1.07;
        }
    }

    #[test]
    fn divisor_over_square_envelope() {
        // sum_{n>N} d(n)/n^2 <= (ln N + 2 gamma + 1)/N  (empirical check;
        // the constant 2 gamma + 1 is what Abel summation actually gives)
        let table = divisor_sieve(200_000).unwrap();
        let zeta2_sq = PI.powi(4) / 36.0;
        let mut partial = 0.0;
        let mut worst: f64 = 0.0;
        for n in 1..=200_000u64 {
            partial += table.d(n) as f64 / (n as f64).powi(2);
            if n >= 10 && n % 97 == 0 {
                let nf = n as f64;
                let tail = zeta2_sq - partial;
                // Abel gives (ln N + 2 gamma + 1)/N with an error-term
                // fluctuation of order N^{-5/3} ln N on top
                let envelope =
                    (nf.ln() + 2.0 * EULER_GAMMA + 1.0) / nf + 3.0 * nf.ln() * nf.powf(-5.0 / 3.0);
                worst = worst.max(tail / envelope);
            }
        }
        assert!(worst <= 1.0, "envelope ratio reached {worst}");
    }
}
