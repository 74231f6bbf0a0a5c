//! Adaptive numerical integration over finite and semi-infinite intervals.
//!
//! The panel rule is the nested 15/7 Gauss-Kronrod pair with the GSL-style
//! error rescaling. Logarithmic endpoint singularities at zero are handled
//! by a geometrically graded head mesh; semi-infinite integrals truncate by
//! decay hint (exponential cutoff or panel-doubling with a measured-ratio
//! tail bound). Oscillatory cosine transforms live in [`fourier_cosine`].

mod oscillatory;

pub use oscillatory::fourier_cosine;
pub(crate) use oscillatory::alternating_panel_sum;

use crate::error::{Error, Result};
use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Hard cap on integrand evaluations for a single adaptive integral.
pub const MAX_EVALS: u64 = 100_000;
/// Cap for a full Fourier-cosine transform (many half-period panels).
pub const MAX_EVALS_OSCILLATORY: u64 = 1 << 21;

/// Endpoint singularity classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Singularity {
    None,
    /// Integrable logarithmic blow-up as `x -> 0^+`.
    LogAtZero,
}

/// How the integrand decays towards infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayHint {
    /// `|f(x)| <~ C e^{-rate x}`
    Exponential { rate: f64 },
    /// `|f(x)| <~ C x^{-power}`, `power > 1`
    Algebraic { power: f64 },
    /// `f(x) = 0` for `x > upper`
    CompactSupport { upper: f64 },
}

/// An integrand together with the structural facts the engine needs.
pub struct IntegrandSpec<F: Fn(f64) -> f64> {
    pub evaluator: F,
    pub singularity: Singularity,
    pub decay: Option<DecayHint>,
}

impl<F: Fn(f64) -> f64> IntegrandSpec<F> {
    pub fn new(evaluator: F) -> Self {
        IntegrandSpec {
            evaluator,
            singularity: Singularity::None,
            decay: None,
        }
    }

    pub fn log_singular_at_zero(mut self) -> Self {
        self.singularity = Singularity::LogAtZero;
        self
    }

    pub fn with_decay(mut self, decay: DecayHint) -> Self {
        self.decay = Some(decay);
        self
    }

    /// Samples the evaluator to check that the decay hint is not wildly
    /// optimistic: `|f|` at 2x, 4x and 8x the nominal scale must sit below
    /// ten times the hinted envelope calibrated at the scale itself.
    pub fn validate_decay(&self) -> Result<()> {
        let Some(decay) = self.decay else {
            return Err(Error::InvalidInput("decay hint missing".into()));
        };
        let envelope: Box<dyn Fn(f64) -> f64> = match decay {
            DecayHint::Exponential { rate } => {
                if !(rate > 0.0) {
                    return Err(Error::InvalidInput("exponential rate must be > 0".into()));
                }
                Box::new(move |x: f64| (-rate * x).exp())
            }
            DecayHint::Algebraic { power } => {
                if !(power > 1.0) {
                    return Err(Error::InvalidInput(
                        "algebraic decay power must exceed 1".into(),
                    ));
                }
                Box::new(move |x: f64| x.powf(-power))
            }
            DecayHint::CompactSupport { upper } => {
                let probe = (self.evaluator)(2.0 * upper).abs();
                return if probe == 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidInput(format!(
                        "claimed compact support but f({}) = {probe}",
                        2.0 * upper
                    )))
                };
            }
        };
        let scale = match decay {
            DecayHint::Exponential { rate } => 1.0 / rate,
            _ => 1.0,
        };
        let calib = (self.evaluator)(scale).abs() / envelope(scale) + 1e-300;
        for mult in [2.0, 4.0, 8.0] {
            let x = mult * scale;
            if (self.evaluator)(x).abs() > 10.0 * calib * envelope(x) {
                return Err(Error::InvalidInput(format!(
                    "decay hint violated by sample at x = {x}"
                )));
            }
        }
        Ok(())
    }
}

/// Outcome of any quadrature in this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: u64,
    /// `true` only when `abs_error_estimate <=` the requested tolerance.
    pub converged: bool,
}

// 15-point Kronrod abscissae / 7-point Gauss weights / 15-point Kronrod
// weights (positive half).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

/// One 15-point Gauss-Kronrod application on `[a, b]`; returns
/// `(value, error_estimate)`.
pub(crate) fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];
    let mut res_gauss = WG[3] * f_center;
    let mut res_kronrod = WGK[7] * f_center;
    let mut res_abs = res_kronrod.abs();

    for j in 0..7usize {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            // odd Kronrod abscissae are the embedded 7-point Gauss nodes
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = (res_kronrod - res_gauss) * half;
    (
        res_kronrod * half,
        rescale_error(err, res_abs * half.abs(), res_asc * half.abs()),
    )
}

/// The 15 Kronrod nodes and weights mapped onto `[a, b]`, for building
/// fixed composite rules.
pub(crate) fn panel_nodes(a: f64, b: f64) -> [(f64, f64); 15] {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut out = [(0.0, 0.0); 15];
    out[0] = (center, WGK[7] * half);
    let mut idx = 1;
    for j in 0..7 {
        let dx = half * XGK[j];
        out[idx] = (center - dx, WGK[j] * half);
        out[idx + 1] = (center + dx, WGK[j] * half);
        idx += 2;
    }
    out
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    seq: u64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.seq == other.seq
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap on error, ties broken by insertion order for determinism
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

pub(crate) struct Counted<'a, F: Fn(f64) -> f64> {
    f: &'a F,
    count: Cell<u64>,
}

impl<'a, F: Fn(f64) -> f64> Counted<'a, F> {
    pub(crate) fn new(f: &'a F) -> Self {
        Counted {
            f,
            count: Cell::new(0),
        }
    }
    pub(crate) fn count(&self) -> u64 {
        self.count.get()
    }
    pub(crate) fn call(&self) -> impl Fn(f64) -> f64 + '_ {
        move |x| {
            self.count.set(self.count.get() + 1);
            (self.f)(x)
        }
    }
}

/// Refines a set of panels until the summed error estimate meets `tol` or
/// the evaluation budget runs out. Values are re-summed left-to-right for
/// determinism.
fn refine<F: Fn(f64) -> f64>(
    counted: &Counted<F>,
    initial: Vec<Panel>,
    extra_err: f64,
    tol: f64,
    budget: u64,
) -> QuadratureResult {
    let f = counted.call();
    let mut seq = initial.len() as u64;
    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();

    for p in initial {
        heap.push(p);
    }

    loop {
        let total_err: f64 =
            heap.iter().map(|p| p.err).sum::<f64>() + frozen.iter().map(|p| p.err).sum::<f64>();
        if total_err + extra_err <= tol {
            break;
        }
        if counted.count() >= budget {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let width = worst.b - worst.a;
        let scale = worst.a.abs().max(worst.b.abs()).max(1e-3);
        if width < 100.0 * f64::EPSILON * scale {
            frozen.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (value, err) = gk15(&f, a, b);
            seq += 1;
            heap.push(Panel {
                a,
                b,
                value,
                err,
                seq,
            });
        }
    }

    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let abs_error_estimate: f64 = panels.iter().map(|p| p.err).sum::<f64>() + extra_err;
    QuadratureResult {
        value,
        abs_error_estimate,
        evaluations: counted.count(),
        converged: abs_error_estimate <= tol,
    }
}

/// Graded geometric mesh on `(0, eps]` for a log-type integrable
/// singularity; returns panels plus a bound for the leftover `(0, x_min)`
/// sliver.
fn graded_head<F: Fn(f64) -> f64>(f: &F, eps: f64, tol: f64) -> (Vec<Panel>, f64) {
    let mut panels = Vec::new();
    let mut hi = eps;
    let mut leftover = 0.0;
    for k in 0..500u32 {
        let lo = 0.5 * hi;
        let (value, err) = gk15(f, lo, hi);
        panels.push(Panel {
            a: lo,
            b: hi,
            value,
            err,
            seq: k as u64,
        });
        let size = value.abs() + err;
        if (k >= 8 && size * 30.0 < tol) || lo < 1e-290 {
            // panels shrink near-geometrically for x^q ln x integrands,
            // so the unprocessed sliver is bounded by a small multiple of
            // the last panel
            leftover = 3.0 * size;
            break;
        }
        hi = lo;
    }
    (panels, leftover)
}

/// Adaptive integral of `spec` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(
    spec: &IntegrandSpec<F>,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(tol >= 1e-13) {
        return Err(Error::InvalidInput(format!(
            "tolerance {tol} below supported floor 1e-13"
        )));
    }
    integrate_impl(spec, a, b, tol)
}

/// Internal entry without the public tolerance floor; sub-integrals of
/// composite schemes clamp to what binary64 can deliver instead of
/// erroring out.
pub(crate) fn integrate_impl<F: Fn(f64) -> f64>(
    spec: &IntegrandSpec<F>,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInput(format!("bad interval [{a}, {b}]")));
    }
    let tol = tol.max(1e-15);
    let counted = Counted::new(&spec.evaluator);
    let f = counted.call();
    let mut initial = Vec::new();
    let mut extra_err = 0.0;
    if spec.singularity == Singularity::LogAtZero && a == 0.0 {
        let eps = b.min(1.0);
        let (head, leftover) = graded_head(&f, eps, tol);
        initial.extend(head);
        extra_err = leftover;
        if eps < b {
            let (value, err) = gk15(&f, eps, b);
            initial.push(Panel {
                a: eps,
                b,
                value,
                err,
                seq: initial.len() as u64,
            });
        }
    } else {
        let (value, err) = gk15(&f, a, b);
        initial.push(Panel {
            a,
            b,
            value,
            err,
            seq: 0,
        });
    }
    Ok(refine(&counted, initial, extra_err, tol, MAX_EVALS))
}

/// Integral of `spec` over `(0, infinity)`, dispatching on the decay hint.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    spec: &IntegrandSpec<F>,
    tol: f64,
) -> Result<QuadratureResult> {
    let Some(decay) = spec.decay else {
        return Err(Error::InvalidInput(
            "integrate_semi_infinite requires a decay hint".into(),
        ));
    };
    match decay {
        DecayHint::CompactSupport { upper } => integrate(spec, 0.0, upper, tol),
        DecayHint::Exponential { rate } => {
            if !(rate > 0.0) {
                return Err(Error::InvalidInput("exponential rate must be > 0".into()));
            }
            segmented_tail(spec, (1.0 / rate).max(1.0), tol, 0.75, 64)
        }
        DecayHint::Algebraic { power } => {
            if !(power > 1.0) {
                return Err(Error::InvalidInput(
                    "algebraic decay power must exceed 1".into(),
                ));
            }
            let theoretical = (1.0f64 - power).exp2();
            segmented_tail(spec, 1.0, tol, theoretical.max(0.5), 128)
        }
    }
}

/// Head integral on `[0, s0]` plus doubling segments with a measured-ratio
/// geometric tail bound.
fn segmented_tail<F: Fn(f64) -> f64>(
    spec: &IntegrandSpec<F>,
    s0: f64,
    tol: f64,
    ratio_guess: f64,
    max_segments: u32,
) -> Result<QuadratureResult> {
    let head = integrate_impl(spec, 0.0, s0, 0.5 * tol)?;
    let mut value = head.value;
    let mut err = head.abs_error_estimate;
    let mut evals = head.evaluations;

    let plain = IntegrandSpec {
        evaluator: &spec.evaluator,
        singularity: Singularity::None,
        decay: None,
    };
    let seg_tol = 0.25 * tol / max_segments as f64;
    let mut lo = s0;
    let mut prev_mag: Option<f64> = None;
    let mut converged = false;
    for _ in 0..max_segments {
        let hi = 2.0 * lo;
        let seg = integrate_impl(&plain, lo, hi, seg_tol)?;
        value += seg.value;
        err += seg.abs_error_estimate;
        evals += seg.evaluations;
        let mag = seg.value.abs() + seg.abs_error_estimate;
        // conservative tail bound: measured segment ratio, inflated, never
        // trusted below the hint's own geometric factor
        let measured = prev_mag.map_or(ratio_guess, |p| {
            if p > 0.0 {
                (mag / p).min(0.95)
            } else {
                ratio_guess
            }
        });
        let r = measured.max(ratio_guess).min(0.96);
        let tail_bound = 1.5 * mag * r / (1.0 - r);
        if tail_bound < 0.25 * tol {
            err += tail_bound;
            converged = true;
            break;
        }
        prev_mag = Some(mag);
        lo = hi;
    }
    if !converged {
        return Ok(QuadratureResult {
            value,
            abs_error_estimate: f64::INFINITY,
            evaluations: evals,
            converged: false,
        });
    }
    Ok(QuadratureResult {
        value,
        abs_error_estimate: err,
        evaluations: evals,
        converged: err <= tol,
    })
}

/// Laplace transform `int_0^T e^{-st} f(t) dt` of a compactly supported
/// evaluator.
pub fn laplace_transform<F: Fn(f64) -> f64>(
    f: F,
    support: f64,
    s: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(s >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "laplace_transform requires s >= 0 (got {s})"
        )));
    }
    if !(support > 0.0) {
        return Err(Error::InvalidInput("support must be positive".into()));
    }
    let spec = IntegrandSpec::new(move |t: f64| {
        let st = s * t;
        if st > 745.0 {
            0.0
        } else {
            (-st).exp() * f(t)
        }
    });
    integrate(&spec, 0.0, support, tol)
}
