//! Adaptive Gauss–Kronrod integration on (0, ∞) for integrands with Gaussian or
//! exponential decay, optionally carrying a cos(wt)-type oscillation.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Kronrod 15-point abscissae; every other one (odd index) is a Gauss 7-point node.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
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
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Most initial panels laid down before half-periods are grouped together.
const INITIAL_PANEL_CAP: usize = 2048;
const SHELL_OFFSETS: [f64; 3] = [0.213, 0.527, 0.871];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Cap on the number of adaptive bisections.
    pub max_panels: usize,
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_panels: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || !rel_tol.is_finite() {
            return Err(Error::domain("QuadratureSpec", rel_tol, "rel_tol > 0"));
        }
        if !(abs_tol >= 0.0) || !abs_tol.is_finite() {
            return Err(Error::domain("QuadratureSpec", abs_tol, "abs_tol >= 0"));
        }
        if max_panels < 1 {
            return Err(Error::domain("QuadratureSpec", max_panels as f64, "max_panels >= 1"));
        }
        Ok(QuadratureSpec {
            rel_tol,
            abs_tol,
            max_panels,
        })
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_panels: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of panel error estimates plus the truncated-tail bound.
    pub error_bound: f64,
    pub panels: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
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
        // ties broken by position
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut res_abs = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();

    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Panel { a, b, value, error }
}

fn shell_max<F: Fn(f64) -> f64>(f: &F, start: f64, width: f64) -> f64 {
    SHELL_OFFSETS
        .iter()
        .map(|o| f(start + o * width).abs())
        .fold(0.0, f64::max)
}

/// Locates the dyadic shell carrying the bulk of the integral.
fn find_scale<F: Fn(f64) -> f64>(f: &F) -> Option<f64> {
    let mut best: Option<(f64, f64)> = None;
    for k in -40..=60 {
        let lo = 2f64.powi(k);
        let weight = shell_max(f, lo, lo) * lo;
        if weight > 0.0 && weight.is_finite() && best.map_or(true, |(w, _)| weight > w) {
            best = Some((weight, 2.0 * lo));
        }
    }
    best.map(|(_, scale)| scale)
}

/// Walks outward from the origin until the integrand is negligible; returns
/// (truncation point, tail bound).
fn truncation<F: Fn(f64) -> f64>(f: &F, scale: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let step = 0.25 * scale;
    let mut rough = 0.0;
    let mut quiet = 0;
    let mut w = 0.0;
    while w < 400.0 * scale {
        let m = shell_max(f, w, step);
        if !m.is_finite() {
            return Err(Error::domain("integrate_semi_infinite", w, "finite integrand"));
        }
        rough += m * step;
        w += step;
        let small = m * step <= 1e-3 * spec.abs_tol.max(spec.rel_tol * rough);
        if w >= 2.0 * scale && small {
            quiet += 1;
            if quiet == 2 {
                return Ok((w, m * scale));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Accuracy {
        what: "integrate_semi_infinite (integrand does not decay)",
        estimate: rough,
        error_bound: f64::INFINITY,
    })
}

fn initial_breaks(end: f64, period: Option<f64>) -> Vec<f64> {
    match period {
        Some(p) if p.is_finite() && p > 0.0 => {
            let half = 0.5 * p;
            let n_half = (end / half).ceil().max(1.0) as usize;
            let group = n_half.div_ceil(INITIAL_PANEL_CAP);
            let width = half * group as f64;
            let n = n_half.div_ceil(group);
            (0..=n).map(|i| i as f64 * width).collect()
        }
        _ => (0..=4).map(|i| end * i as f64 / 4.0).collect(),
    }
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, breaks: &[f64], tail: f64, spec: &QuadratureSpec) -> Quadrature {
    let mut heap: BinaryHeap<Panel> = breaks
        .windows(2)
        .map(|ab| gauss_kronrod(f, ab[0], ab[1]))
        .collect();
    let total = |heap: &BinaryHeap<Panel>| -> (f64, f64) {
        let mut v: Vec<&Panel> = heap.iter().collect();
        v.sort_by(|x, y| x.a.total_cmp(&y.a));
        v.iter().fold((0.0, 0.0), |(s, e), p| (s + p.value, e + p.error))
    };
    let (mut value, mut error) = total(&heap);
    let mut best = (error + tail, value);
    let mut bisections = 0;
    loop {
        if error + tail <= spec.target(value) {
            let (v, e) = total(&heap);
            return Quadrature {
                value: v,
                error_bound: e + tail,
                panels: heap.len(),
                converged: true,
            };
        }
        if bisections >= spec.max_panels {
            break;
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        let left = gauss_kronrod(f, worst.a, mid);
        let right = gauss_kronrod(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        bisections += 1;
        if bisections % 64 == 0 {
            (value, error) = total(&heap);
        }
        if error + tail < best.0 {
            best = (error + tail, value);
        }
    }
    Quadrature {
        value: best.1,
        error_bound: best.0,
        panels: heap.len(),
        converged: false,
    }
}

fn validate_period(period: Option<f64>) -> Result<()> {
    match period {
        Some(p) if !(p > 0.0) => Err(Error::domain("integrate_semi_infinite", p, "oscillation period > 0")),
        _ => Ok(()),
    }
}

fn run<F: Fn(f64) -> f64>(
    f: &F,
    oscillation_period: Option<f64>,
    scale: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    validate_period(oscillation_period)?;
    let scale = match scale {
        Some(s) if s > 0.0 && s.is_finite() => s,
        Some(s) => return Err(Error::domain("integrate_with_scale", s, "scale > 0")),
        None => match find_scale(f) {
            Some(s) => s,
            None => {
                return Ok(Quadrature {
                    value: 0.0,
                    error_bound: 0.0,
                    panels: 0,
                    converged: true,
                })
            }
        },
    };
    let (end, tail) = truncation(f, scale, spec)?;
    let breaks = initial_breaks(end, oscillation_period);
    Ok(adaptive(f, &breaks, tail, spec))
}

/// Adaptive Gauss–Kronrod on a finite interval [a, b].
pub(crate) fn integrate_interval<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Quadrature {
    let mid = 0.5 * (a + b);
    adaptive(&f, &[a, mid, b], 0.0, spec)
}

/// Like [`integrate_semi_infinite`] but returns the best estimate even when the
/// tolerance was not met (`converged == false`).
pub fn integrate_semi_infinite_report<F: Fn(f64) -> f64>(
    f: F,
    oscillation_period: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    run(&f, oscillation_period, None, spec)
}

fn finish(q: Quadrature) -> Result<Quadrature> {
    if q.converged {
        Ok(q)
    } else {
        Err(Error::Accuracy {
            what: "integrate_semi_infinite",
            estimate: q.value,
            error_bound: q.error_bound,
        })
    }
}

/// ∫₀^∞ f(w) dw. When `oscillation_period` is given, initial panels are aligned
/// with half-periods out to the truncation point.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    oscillation_period: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    finish(run(&f, oscillation_period, None, spec)?)
}

/// Same as [`integrate_semi_infinite`] with a known envelope width, which skips
/// the scale search.
pub fn integrate_with_scale<F: Fn(f64) -> f64>(
    f: F,
    oscillation_period: Option<f64>,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    finish(run(&f, oscillation_period, Some(scale), spec)?)
}
