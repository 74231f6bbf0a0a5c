//! Two-sided evaluation of the Voronoi summation formula
//!
//! ```text
//! sum_{n>=1} d(n) f~(n) = int_0^inf (ln k + 2 gamma) f~(k) dk + f~(0)/4
//!        + 2 pi sum_{n>=1} d(n) int_0^inf [(2/pi) K0 - Y0](4 pi sqrt(nk)) f~(k) dk
//! ```
//!
//! for compactly supported test functions `f` with Laplace transform `f~`,
//! plus the per-`n` kernel identity that ties the Bessel route to the
//! combined-exponential-integral route:
//!
//! ```text
//! int_0^inf h(4 pi^2 n / t) f(t)/t dt
//!        = int_0^inf [pi Y0 - 2 K0](4 pi sqrt(nk)) f~(k) dk
//! ```
//!
//! The right-hand kernel is `-pi` times the summation-formula kernel; that
//! single sign constant is pinned by a unit test below because it is the
//! easiest thing in the whole formula to get wrong.

use crate::accel::{divisor_weighted_tail, fit_inverse_powers, KahanSum};
use crate::arith::divisor_sieve;
use crate::error::{Error, Result};
use crate::quadrature::{
    self, alternating_panel_sum, integrate, integrate_semi_infinite, laplace_transform, DecayHint,
    IntegrandSpec, Singularity,
};
use crate::special::{bessel_k0, bessel_y0, ei_combo};
use crate::theta::theta_osc;
use crate::EULER_GAMMA;
use std::cell::Cell;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

/// `[pi Y0 - 2 K0] = EI_TO_BESSEL_SIGN * pi * [(2/pi) K0 - Y0]`.
const EI_TO_BESSEL_SIGN: f64 = -1.0;

type Eval = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A compactly supported test function with the metadata the evaluator
/// needs: support, small-`t` exponent `beta`, optional slowly-varying
/// log-power, and an optional closed-form Laplace transform.
pub struct TestFunction {
    name: String,
    evaluator: Eval,
    /// Support upper end `T`; the evaluator vanishes beyond it.
    support: f64,
    /// Support lower end (0 unless the function lives away from zero).
    support_lo: f64,
    /// Small-t exponent: `|f(t)| <= C t^beta (1 + |ln t|^p)` near 0.
    beta: f64,
    /// The log power `p` above, when the author declares one.
    log_power: Option<f64>,
    closed_form_transform: Option<Eval>,
    regulated: bool,
    rule: OnceLock<TransformRule>,
    validation: OnceLock<Result<()>>,
}

/// Fixed composite Gauss-Kronrod rule with geometric grading towards the
/// lower support edge; `transform(s)` becomes a weighted sum of
/// `e^{-s t_i}`, uniformly accurate in `s` because panel widths track
/// distance from the edge.
struct TransformRule {
    /// `(t_i, w_i f(t_i))` sorted by `t_i` ascending.
    nodes: Vec<(f64, f64)>,
}

impl TransformRule {
    fn build(f: &Eval, lo: f64, hi: f64) -> TransformRule {
        let span = hi - lo;
        let mut nodes = Vec::new();
        for level in 0..=46u32 {
            let top = lo + span * 0.5f64.powi(level as i32);
            let bottom = lo + span * 0.5f64.powi(level as i32 + 1);
            let quarter = (top - bottom) / 4.0;
            for q in 0..4 {
                let a = bottom + quarter * q as f64;
                for (t, w) in quadrature::panel_nodes(a, a + quarter) {
                    nodes.push((t, w * f(t)));
                }
            }
        }
        nodes.sort_by(|p, q| p.0.total_cmp(&q.0));
        TransformRule { nodes }
    }

    fn transform(&self, lo: f64, s: f64) -> f64 {
        if s * lo > 745.0 {
            return 0.0;
        }
        let mut acc = KahanSum::default();
        for &(t, wf) in &self.nodes {
            let st = s * (t - lo);
            if st > 745.0 {
                break;
            }
            acc.add((-st).exp() * wf);
        }
        (-s * lo).exp() * acc.value()
    }
}

impl TestFunction {
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn support(&self) -> f64 {
        self.support
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn log_power(&self) -> Option<f64> {
        self.log_power
    }
    pub fn is_regulated(&self) -> bool {
        self.regulated
    }
    pub fn has_closed_form_transform(&self) -> bool {
        self.closed_form_transform.is_some()
    }

    /// `f(t)`, zero outside the support.
    pub fn eval(&self, t: f64) -> f64 {
        if t < 0.0 || t > self.support {
            0.0
        } else {
            (self.evaluator)(t)
        }
    }

    /// `f1(t) = t(1-t)` on `[0,1]`: beta = 1, closed-form transform.
    pub fn poly() -> TestFunction {
        let closed = |s: f64| -> f64 {
            if s < 0.5 {
                // sum_k (-s)^k / (k! (k+2)(k+3))
                let mut acc = 0.0;
                let mut pow = 1.0; // (-s)^k / k!
                for k in 0..30u32 {
                    let kf = k as f64;
                    let term = pow / ((kf + 2.0) * (kf + 3.0));
                    acc += term;
                    if term.abs() < 1e-19 {
                        break;
                    }
                    pow *= -s / (kf + 1.0);
                }
                acc
            } else {
                (s - 2.0 + (-s).exp() * (s + 2.0)) / (s * s * s)
            }
        };
        TestFunction {
            name: "poly".into(),
            evaluator: Arc::new(|t: f64| t * (1.0 - t)),
            support: 1.0,
            support_lo: 0.0,
            beta: 1.0,
            log_power: None,
            closed_form_transform: Some(Arc::new(closed)),
            regulated: true,
            rule: OnceLock::new(),
            validation: OnceLock::new(),
        }
    }

    /// `f2(t) = (1 - (2t-3)^2)^2` on `[1,2]`: support away from zero, no
    /// closed form.
    pub fn bump() -> TestFunction {
        TestFunction {
            name: "bump".into(),
            evaluator: Arc::new(|t: f64| {
                let u = 2.0 * t - 3.0;
                let w = 1.0 - u * u;
                if w <= 0.0 {
                    0.0
                } else {
                    w * w
                }
            }),
            support: 2.0,
            support_lo: 1.0,
            beta: 1.0,
            log_power: None,
            closed_form_transform: None,
            regulated: true,
            rule: OnceLock::new(),
            validation: OnceLock::new(),
        }
    }

    /// `f3(t) = t^{3/2}(1-t)` on `[0,1]`: non-integer beta, no closed form.
    pub fn frac() -> TestFunction {
        TestFunction {
            name: "frac".into(),
            evaluator: Arc::new(|t: f64| t.powf(1.5) * (1.0 - t)),
            support: 1.0,
            support_lo: 0.0,
            beta: 1.5,
            log_power: None,
            closed_form_transform: None,
            regulated: true,
            rule: OnceLock::new(),
            validation: OnceLock::new(),
        }
    }

    /// The zero function (all report fields must vanish on it).
    pub fn zero() -> TestFunction {
        TestFunction {
            name: "zero".into(),
            evaluator: Arc::new(|_t: f64| 0.0),
            support: 1.0,
            support_lo: 0.0,
            beta: 1.0,
            log_power: None,
            closed_form_transform: Some(Arc::new(|_s: f64| 0.0)),
            regulated: true,
            rule: OnceLock::new(),
            validation: OnceLock::new(),
        }
    }

    /// Gallery lookup by CLI name.
    pub fn by_name(name: &str) -> Option<TestFunction> {
        match name {
            "poly" => Some(Self::poly()),
            "bump" => Some(Self::bump()),
            "frac" => Some(Self::frac()),
            _ => None,
        }
    }

    /// `a f + b g`; the formula is linear, so reports must combine the
    /// same way.
    pub fn linear_combination(a: f64, f: &TestFunction, b: f64, g: &TestFunction) -> TestFunction {
        let (fe, ge) = (f.evaluator.clone(), g.evaluator.clone());
        let (fs, gs) = (f.support, g.support);
        let closed = match (&f.closed_form_transform, &g.closed_form_transform) {
            (Some(fc), Some(gc)) => {
                let (fc, gc) = (fc.clone(), gc.clone());
                Some(Arc::new(move |s: f64| a * fc(s) + b * gc(s)) as Eval)
            }
            _ => None,
        };
        TestFunction {
            name: format!("{}*{}+{}*{}", a, f.name, b, g.name),
            evaluator: Arc::new(move |t: f64| {
                let fv = if t <= fs { fe(t) } else { 0.0 };
                let gv = if t <= gs { ge(t) } else { 0.0 };
                a * fv + b * gv
            }),
            support: fs.max(gs),
            support_lo: f.support_lo.min(g.support_lo),
            beta: f.beta.min(g.beta),
            log_power: None,
            closed_form_transform: closed,
            regulated: f.regulated && g.regulated,
            rule: OnceLock::new(),
            validation: OnceLock::new(),
        }
    }

    /// Sampled contract checks: vanishing beyond the support and the
    /// `t^beta` envelope near zero.
    pub fn validate_contract(&self) -> Result<()> {
        for mult in [1.01, 2.0, 10.0] {
            let t = self.support * mult;
            if self.eval(t) != 0.0 {
                return Err(Error::InvalidInput(format!(
                    "{}: support violated at t = {t}",
                    self.name
                )));
            }
        }
        let envelope = |t: f64| {
            let logs = match self.log_power {
                Some(p) => 1.0 + t.ln().abs().powf(p),
                None => 1.0,
            };
            t.powf(self.beta) * logs
        };
        let c = self.eval(1e-2).abs() / envelope(1e-2) + 1e-300;
        for t in [1e-4, 1e-6] {
            if self.eval(t).abs() > 10.0 * c * envelope(t) {
                return Err(Error::InvalidInput(format!(
                    "{}: small-t envelope violated at t = {t}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    fn rule(&self) -> &TransformRule {
        self.rule
            .get_or_init(|| TransformRule::build(&self.evaluator, self.support_lo, self.support))
    }

    /// One-time cross-validation of the fast transform path against the
    /// adaptive quadrature route.
    fn ensure_validated(&self) -> Result<()> {
        self.validation
            .get_or_init(|| {
                let ev = self.evaluator.clone();
                let support = self.support;
                for s in [0.0, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0] {
                    let slow = laplace_transform(|t| ev(t), support, s, 1e-12)?;
                    let fast = self.transform_fast(s);
                    if (fast - slow.value).abs() > 1e-10 + 1e-9 * slow.value.abs() {
                        return Err(Error::Inconsistency(format!(
                            "{}: transform routes disagree at s = {s}: fast {fast} vs quadrature {}",
                            self.name, slow.value
                        )));
                    }
                }
                Ok(())
            })
            .clone()
    }

    /// Fast Laplace transform: closed form when present, otherwise the
    /// cached composite rule.
    pub fn transform_fast(&self, s: f64) -> f64 {
        match &self.closed_form_transform {
            Some(cf) => cf(s),
            None => self.rule().transform(self.support_lo, s),
        }
    }
}

/// Laplace transform of `f` at `s >= 0`: validated closed form when the
/// author supplied one, adaptive quadrature otherwise.
pub fn transform(f: &TestFunction, s: f64, tol: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::InvalidInput(format!("transform requires s >= 0 (got {s})")));
    }
    f.ensure_validated()?;
    match &f.closed_form_transform {
        Some(cf) => Ok(cf(s)),
        None => Ok(laplace_transform(|t| f.eval(t), f.support, s, tol)?.value),
    }
}

/// `(2/pi) K0(4 pi sqrt(nk)) - Y0(4 pi sqrt(nk))`, the summation-formula
/// kernel.
pub fn bessel_kernel(n: u64, k: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidInput("kernel index n must be >= 1".into()));
    }
    if !(k > 0.0) {
        return Err(Error::Domain(format!("bessel_kernel requires k > 0 (got {k})")));
    }
    let z = 4.0 * PI * ((n as f64) * k).sqrt();
    Ok((2.0 / PI) * bessel_k0(z)?.value - bessel_y0(z)?.value)
}

/// Left side `sum_{n<=N} d(n) f~(n)` with an extrapolated divisor-weighted
/// tail; returns the value and the truncation point.
pub fn lhs_divisor_sum(f: &TestFunction, tol: f64) -> Result<(f64, u64)> {
    if !(f.beta > 0.0) {
        return Err(Error::InvalidInput(
            "beta must be positive or the Weyl integral diverges".into(),
        ));
    }
    f.ensure_validated()?;
    if f.support_lo > 0.0 {
        // transform decays like e^{-support_lo * n}: sum until quiet
        let rate = f.support_lo;
        let mut acc = KahanSum::default();
        let mut envelope_c: f64 = 0.0;
        let table = divisor_sieve(4096)?;
        for n in 1..=4096u64 {
            let ft = f.transform_fast(n as f64);
            acc.add(table.d(n) as f64 * ft);
            if ft != 0.0 && rate * n as f64 <= 700.0 {
                envelope_c = envelope_c.max(ft.abs() * (rate * n as f64).exp());
            }
            let tail = 2.0 * ((n + 1) as f64).sqrt() * envelope_c
                * (-rate * (n + 1) as f64).exp()
                / (1.0 - (-rate).exp());
            if n >= 8 && tail < 0.5 * tol {
                return Ok((acc.value(), n));
            }
        }
        return Err(Error::NonConvergence(
            "lhs_divisor_sum: exponential-route tail not reached".into(),
        ));
    }

    let p1 = f.beta + 1.0;
    let p2 = f.beta + 2.0;
    let mut n: u64 = 4096;
    loop {
        let table = divisor_sieve(n)?;
        let mut acc = KahanSum::default();
        for k in 1..=n {
            acc.add(table.d(k) as f64 * f.transform_fast(k as f64));
        }
        // fit the transform's own large-argument behaviour on [N/2, N]
        let xs: Vec<f64> = (n / 2..n).step_by(((n / 2) / 64).max(1) as usize)
            .map(|k| k as f64)
            .collect();
        let ys: Vec<f64> = xs.iter().map(|&x| f.transform_fast(x)).collect();
        let Some((coeffs, resid)) = fit_inverse_powers(&xs, &ys, &[p1, p2]) else {
            return Err(Error::NonConvergence("lhs tail fit failed".into()));
        };
        let (t1, b1) = divisor_weighted_tail(p1, n)?;
        let (t2, b2) = divisor_weighted_tail(p2, n)?;
        let tail = coeffs[0] * t1 + coeffs[1] * t2;
        let err = coeffs[0].abs() * b1 + coeffs[1].abs() * b2 + resid * n as f64;
        if err < 0.5 * tol {
            return Ok((acc.value() + tail, n));
        }
        n *= 2;
        if n > (1 << 21) {
            return Err(Error::NonConvergence(format!(
                "lhs_divisor_sum tail error {err} above tolerance at N = {n}"
            )));
        }
    }
}

/// Weyl term `int_0^inf (ln k + 2 gamma) f~(k) dk + f~(0)/4`.
pub fn weyl_term(f: &TestFunction, tol: f64) -> Result<f64> {
    f.ensure_validated()?;
    let decay = if f.support_lo > 0.0 {
        DecayHint::Exponential { rate: f.support_lo }
    } else {
        DecayHint::Algebraic { power: f.beta + 1.0 }
    };
    let spec = IntegrandSpec {
        evaluator: |k: f64| (k.ln() + 2.0 * EULER_GAMMA) * f.transform_fast(k),
        singularity: Singularity::LogAtZero,
        decay: Some(decay),
    };
    let integral = integrate_semi_infinite(&spec, 0.75 * tol)?;
    if !integral.converged {
        return Err(Error::NonConvergence("Weyl integral did not converge".into()));
    }
    Ok(integral.value + transform(f, 0.0, 0.25 * tol)? / 4.0)
}

/// `int_0^inf kernel(n, k) f~(k) dk` via the substitution `k = u^2`:
/// a short adaptive head followed by half-period panels of the Bessel
/// oscillation with series acceleration.
fn kernel_transform_integral(f: &TestFunction, n: u64, tol: f64) -> Result<f64> {
    let omega = 4.0 * PI * (n as f64).sqrt();
    let g = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        let z = omega * u;
        let kernel = (2.0 / PI) * bessel_k0(z).map(|r| r.value).unwrap_or(0.0)
            - bessel_y0(z).map(|r| r.value).unwrap_or(0.0);
        kernel * f.transform_fast(u * u) * 2.0 * u
    };
    // head through the first few oscillations: sin(omega u - pi/4) zeros
    // sit at u = (j + 1/4) pi / omega
    let head_end = (3.25) * PI / omega;
    let head_spec = IntegrandSpec {
        evaluator: &g,
        singularity: Singularity::LogAtZero,
        decay: None,
    };
    let head = integrate(&head_spec, 0.0, head_end, 0.25 * tol)?;
    let r = alternating_panel_sum(
        &g,
        head_end,
        PI / omega,
        head.value,
        head.abs_error_estimate,
        tol,
    )?;
    if !r.abs_error_estimate.is_finite() {
        return Err(Error::NonConvergence(format!(
            "kernel integral for n = {n} did not converge"
        )));
    }
    Ok(r.value)
}

/// Oscillatory term `2 pi sum_n d(n) I_n` with
/// `I_n = int kernel(n,k) f~(k) dk`. The integrals fall on an even inverse
/// power ladder in `n`, so the divisor-weighted tail reduces to the exact
/// Dirichlet series `sum d(n) n^{-2m} = zeta(2m)^2`.
pub fn osc_term(f: &TestFunction, tol: f64) -> Result<(f64, u64)> {
    f.ensure_validated()?;
    let zeta2_sq = PI.powi(4) / 36.0;
    let zeta4_sq = PI.powi(8) / 8100.0;
    let zeta6_sq = PI.powi(12) / 893025.0;

    let mut integrals: Vec<f64> = Vec::new();
    let mut n_cap = 64u64;
    let mut prev_candidate: Option<f64> = None;
    loop {
        let table = divisor_sieve(n_cap)?;
        for n in (integrals.len() as u64 + 1)..=n_cap {
            let tol_n = (tol / (40.0 * n as f64)).max(1e-13);
            integrals.push(kernel_transform_integral(f, n, tol_n)?);
        }
        let mut weighted = KahanSum::default();
        let mut p2 = KahanSum::default();
        let mut p4 = KahanSum::default();
        let mut p6 = KahanSum::default();
        for k in 1..=n_cap {
            let d = table.d(k) as f64;
            let kf = k as f64;
            weighted.add(d * integrals[(k - 1) as usize]);
            p2.add(d / (kf * kf));
            p4.add(d / kf.powi(4));
            p6.add(d / kf.powi(6));
        }
        let xs: Vec<f64> = (n_cap / 2..n_cap).map(|k| (k + 1) as f64).collect();
        let ys: Vec<f64> = (n_cap / 2..n_cap)
            .map(|k| integrals[k as usize])
            .collect();
        let max_abs = ys.iter().fold(0.0f64, |m, y| m.max(y.abs()));
        if max_abs == 0.0 {
            return Ok((2.0 * PI * weighted.value(), n_cap));
        }
        if let Some((coeffs, resid)) = fit_inverse_powers(&xs, &ys, &[2.0, 4.0, 6.0]) {
            let tail = coeffs[0] * (zeta2_sq - p2.value())
                + coeffs[1] * (zeta4_sq - p4.value())
                + coeffs[2] * (zeta6_sq - p6.value());
            let candidate = 2.0 * PI * (weighted.value() + tail);
            let tail_err = 2.0 * PI * resid * (n_cap as f64).ln() * 3.0;
            if let Some(prev) = prev_candidate {
                if (candidate - prev).abs() + tail_err < 0.5 * tol {
                    return Ok((candidate, n_cap));
                }
            }
            prev_candidate = Some(candidate);
        }
        if n_cap >= 1024 {
            return Err(Error::NonConvergence(format!(
                "oscillatory n-series not settled by N = {n_cap}"
            )));
        }
        n_cap *= 2;
    }
}

/// The same oscillatory term through the `t`-domain: `int_0^T f(t)
/// Theta_osc(t) dt`, finite because the support is compact.
pub fn osc_term_via_ei(f: &TestFunction, tol: f64) -> Result<f64> {
    let failure: Cell<Option<Error>> = Cell::new(None);
    let inner_tol = (0.5 * tol / f.support.max(1.0)).max(1e-13);
    let spec = IntegrandSpec {
        evaluator: |t: f64| {
            if t <= 0.0 || t > f.support {
                return 0.0;
            }
            match theta_osc(t, inner_tol) {
                Ok(v) => f.eval(t) * v,
                Err(e) => {
                    failure.set(Some(e));
                    0.0
                }
            }
        },
        singularity: Singularity::None,
        decay: None,
    };
    let r = integrate(&spec, 0.0, f.support, 0.5 * tol)?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    if !r.converged {
        return Err(Error::NonConvergence(
            "t-domain oscillatory integral did not converge".into(),
        ));
    }
    Ok(r.value)
}

/// `|int_0^inf h(4 pi^2 n/t) f(t)/t dt - int_0^inf [pi Y0 - 2 K0] f~ dk|`
/// for one `n`: the kernel identity connecting the two oscillatory routes.
pub fn kernel_identity_check(n: u64, f: &TestFunction, tol: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be >= 1".into()));
    }
    let scale = 4.0 * PI * PI * n as f64;
    let spec = IntegrandSpec {
        evaluator: |t: f64| {
            if t <= 0.0 || t > f.support {
                return 0.0;
            }
            let h = ei_combo(scale / t).map(|r| r.value).unwrap_or(0.0);
            h * f.eval(t) / t
        },
        singularity: Singularity::None,
        decay: None,
    };
    let lhs = integrate(&spec, 0.0, f.support, 0.5 * tol)?;
    let rhs = EI_TO_BESSEL_SIGN * PI * kernel_transform_integral(f, n, 0.5 * tol / PI)?;
    Ok((lhs.value - rhs).abs())
}

/// Everything the two-sided evaluation produces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoronoiReport {
    /// `sum d(n) f~(n)`
    pub lhs: f64,
    pub weyl_term: f64,
    pub osc_term: f64,
    pub osc_term_via_ei: f64,
    /// `|lhs - weyl_term - osc_term|`
    pub residual: f64,
    /// `|osc_term - osc_term_via_ei|`
    pub cross_route_gap: f64,
    /// divisor-sum truncation of the oscillatory Bessel route
    pub truncation_n: u64,
    pub tol: f64,
}

/// Full two-sided evaluation of the summation formula for `f`.
pub fn evaluate(f: &TestFunction, tol: f64) -> Result<VoronoiReport> {
    let quarter = 0.25 * tol;
    let (lhs, _lhs_n) = lhs_divisor_sum(f, quarter)?;
    let weyl = weyl_term(f, quarter)?;
    let (osc, truncation_n) = osc_term(f, quarter)?;
    let osc_ei = osc_term_via_ei(f, quarter)?;
    Ok(VoronoiReport {
        lhs,
        weyl_term: weyl,
        osc_term: osc,
        osc_term_via_ei: osc_ei,
        residual: (lhs - weyl - osc).abs(),
        cross_route_gap: (osc - osc_ei).abs(),
        truncation_n,
        tol,
    })
}
