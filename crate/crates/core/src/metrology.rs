//! Ramsey phase estimation with a GHZ state or with N independent qubits.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::cloud::CloudGeometry;
use crate::dephasing::DephasingKernel;
use crate::error::{Error, Result};
use crate::numerics::{gamma_fn, QuadratureSpec};
use crate::reservoir::{SpectralDensity, ThermalState};

const GRID_PER_DECADE: f64 = 400.0;
const FD_STEP: f64 = 1e-4;
const BISECTION_STEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// N uncorrelated qubits measured one by one.
    OneByOne,
    /// N-qubit GHZ state measured collectively.
    GhzCollective,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::OneByOne => "one_by_one",
            Mode::GhzCollective => "ghz_collective",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "one_by_one" => Ok(Mode::OneByOne),
            "ghz_collective" | "ghz" => Ok(Mode::GhzCollective),
            _ => Err(format!("unknown mode `{s}` (one_by_one | ghz_collective)")),
        }
    }
}

/// How [`best_time_with`] picks among the extrema of F.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BestTimeRule {
    /// Largest F among all local maxima and `t_max`.
    #[default]
    GlobalMax,
    /// Earliest local maximum of F; `t_max` if there is none.
    FirstRoot,
}

impl BestTimeRule {
    pub fn name(&self) -> &'static str {
        match self {
            BestTimeRule::GlobalMax => "global_max",
            BestTimeRule::FirstRoot => "first_root",
        }
    }
}

impl std::str::FromStr for BestTimeRule {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "global_max" => Ok(BestTimeRule::GlobalMax),
            "first_root" => Ok(BestTimeRule::FirstRoot),
            _ => Err(format!("unknown best_time_rule `{s}` (global_max | first_root)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetrologyScenario {
    pub mode: Mode,
    pub phi: f64,
    pub t_max: f64,
    pub n_branch: i64,
}

impl MetrologyScenario {
    pub fn new(mode: Mode, phi: f64, t_max: f64, n_branch: i64) -> Result<Self> {
        if !(t_max > 0.0) || !t_max.is_finite() {
            return Err(Error::domain("MetrologyScenario", t_max, "t_max > 0"));
        }
        Ok(Self { mode, phi, t_max, n_branch })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherPoint {
    pub t: f64,
    pub fisher: f64,
    pub gamma: f64,
    pub is_global_max: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    One,
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TemperatureClass {
    Zero,
    Finite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    pub s: f64,
    pub dimension: Dimension,
    pub temperature_class: TemperatureClass,
    pub all_time_suppression: bool,
    pub zeno_suppression: bool,
}

/// `(1 - e^{-γ} cos(N φ t + Δ)) / 2`.
pub fn ground_state_probability(gamma: f64, delta: f64, phi: f64, t: f64, n_qubits: usize) -> Result<f64> {
    if !(gamma >= 0.0) {
        return Err(Error::domain("ground_state_probability", gamma, "gamma >= 0"));
    }
    let phase = n_qubits as f64 * phi * t + delta;
    Ok(0.5 * (1.0 - (-gamma).exp() * phase.cos()))
}

/// `∂p/∂φ` of [`ground_state_probability`].
pub fn probability_derivative(gamma: f64, delta: f64, phi: f64, t: f64, n_qubits: usize) -> f64 {
    let n = n_qubits as f64;
    0.5 * n * t * (-gamma).exp() * (n * phi * t + delta).sin()
}

/// Detuning with `N φ t + Δ = (2n + 1) π / 2`.
pub fn optimal_detuning(n_branch: i64, n_qubits: usize, t: f64, delta: f64) -> Result<f64> {
    if !(t > 0.0) || n_qubits == 0 {
        return Err(Error::domain("optimal_detuning", t, "t > 0 and N >= 1"));
    }
    Ok(((2 * n_branch + 1) as f64 * 0.5 * PI - delta) / (n_qubits as f64 * t))
}

/// Fisher information of a two-outcome measurement.
pub fn fisher_binary(p: f64, dp_dphi: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::SingularProbability(p));
    }
    Ok(dp_dphi * dp_dphi * (1.0 / p + 1.0 / (1.0 - p)))
}

/// Single-shot variance bound `1 / F`.
pub fn cramer_rao_bound(f: &FisherPoint) -> Result<f64> {
    if !(f.fisher > 0.0) {
        return Err(Error::UnboundedVariance);
    }
    Ok(1.0 / f.fisher)
}

/// Dephasing kernel governing the given measurement mode.
pub fn mode_kernel(sd: &SpectralDensity, g: &CloudGeometry, ts: &ThermalState, mode: Mode) -> DephasingKernel {
    match mode {
        Mode::GhzCollective => DephasingKernel::collective(sd, g, ts),
        Mode::OneByOne => DephasingKernel::single_qubit(sd, ts),
    }
}

fn fisher_from_gamma(mode: Mode, n: usize, t: f64, gamma: f64) -> f64 {
    let n = n as f64;
    let count = match mode {
        Mode::GhzCollective => n * n,
        Mode::OneByOne => n,
    };
    count * t * t * (-2.0 * gamma).exp()
}

/// Fisher information at the optimal detuning.
pub fn fisher_optimal(
    sd: &SpectralDensity,
    g: &CloudGeometry,
    ts: &ThermalState,
    t: f64,
    mode: Mode,
    spec: &QuadratureSpec,
) -> Result<FisherPoint> {
    let gamma = mode_kernel(sd, g, ts, mode).gamma(t, spec)?;
    Ok(FisherPoint {
        t,
        fisher: fisher_from_gamma(mode, g.n_atoms, t, gamma),
        gamma,
        is_global_max: false,
    })
}

/// Best interrogation time in `(0, t_max]` under [`BestTimeRule::GlobalMax`].
pub fn best_time(
    sd: &SpectralDensity,
    g: &CloudGeometry,
    ts: &ThermalState,
    mode: Mode,
    t_max: f64,
    spec: &QuadratureSpec,
) -> Result<FisherPoint> {
    best_time_with(sd, g, ts, mode, t_max, BestTimeRule::GlobalMax, spec)
}

/// Best interrogation time in `(0, t_max]`.
///
/// Local maxima of F are the upward roots of `q(t) = t dγ/dt - 1`. They are
/// bracketed on a log grid from `(2f)^{-1/2}` up, with `f` the short-time
/// coefficient, and refined by bisection.
pub fn best_time_with(
    sd: &SpectralDensity,
    g: &CloudGeometry,
    ts: &ThermalState,
    mode: Mode,
    t_max: f64,
    rule: BestTimeRule,
    spec: &QuadratureSpec,
) -> Result<FisherPoint> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::domain("best_time", t_max, "t_max > 0"));
    }
    let kernel = mode_kernel(sd, g, ts, mode);
    let n = g.n_atoms;
    let point = |t: f64| -> Result<FisherPoint> {
        let gamma = kernel.gamma(t, spec)?;
        Ok(FisherPoint {
            t,
            fisher: fisher_from_gamma(mode, n, t, gamma),
            gamma,
            is_global_max: true,
        })
    };
    let f = kernel.zeno_coefficient(spec)?;
    if f == 0.0 {
        return point(t_max);
    }
    let t_lo = (2.0 * f).sqrt().recip();
    if t_lo >= t_max {
        return point(t_max);
    }
    let q = |t: f64| -> Result<f64> {
        let h = FD_STEP * t;
        let d = (kernel.gamma(t + h, spec)? - kernel.gamma(t - h, spec)?) / (2.0 * h);
        Ok(t * d - 1.0)
    };

    let decades = (t_max / t_lo).log10();
    let steps = (decades * GRID_PER_DECADE).ceil().max(1.0) as usize;
    let grid: Vec<f64> = (0..=steps)
        .map(|i| {
            if i == steps {
                t_max
            } else {
                t_lo * 10f64.powf(decades * i as f64 / steps as f64)
            }
        })
        .collect();

    let mut candidates = Vec::new();
    match rule {
        BestTimeRule::FirstRoot => {
            let mut prev = (grid[0], q(grid[0])?);
            for &t in &grid[1..] {
                let cur = (t, q(t)?);
                if prev.1 < 0.0 && cur.1 >= 0.0 {
                    candidates.push(bisect(&q, prev, cur)?);
                    break;
                }
                prev = cur;
            }
        }
        BestTimeRule::GlobalMax => {
            let qs = grid.par_iter().map(|&t| q(t)).collect::<Result<Vec<f64>>>()?;
            for i in 1..grid.len() {
                if qs[i - 1] < 0.0 && qs[i] >= 0.0 {
                    candidates.push(bisect(&q, (grid[i - 1], qs[i - 1]), (grid[i], qs[i]))?);
                }
            }
        }
    }
    if rule == BestTimeRule::FirstRoot && !candidates.is_empty() {
        return point(candidates[0]);
    }
    candidates.push(t_max);
    let mut best: Option<FisherPoint> = None;
    for t in candidates {
        let p = point(t)?;
        if best.map_or(true, |b| p.fisher > b.fisher) {
            best = Some(p);
        }
    }
    Ok(best.expect("t_max is always a candidate"))
}

fn bisect(q: &impl Fn(f64) -> Result<f64>, mut lo: (f64, f64), mut hi: (f64, f64)) -> Result<f64> {
    for _ in 0..BISECTION_STEPS {
        if hi.0 - lo.0 <= 4.0 * f64::EPSILON * hi.0 {
            break;
        }
        let mid = 0.5 * (lo.0 + hi.0);
        let qm = q(mid)?;
        if qm < 0.0 {
            lo = (mid, qm);
        } else {
            hi = (mid, qm);
        }
    }
    // linear interpolation inside the final bracket
    if hi.1 != lo.1 {
        Ok(lo.0 - lo.1 * (hi.0 - lo.0) / (hi.1 - lo.1))
    } else {
        Ok(0.5 * (lo.0 + hi.0))
    }
}

/// Short-time estimate of the best GHZ interrogation time.
///
/// Zero temperature keeps the full Zeno coefficient; at finite temperature the
/// thermal kernel is replaced by its small-frequency form `2θ/w`.
pub fn t_best_zeno(sd: &SpectralDensity, g: &CloudGeometry, ts: &ThermalState) -> Result<f64> {
    let n = g.n_atoms as f64;
    let wb = g.w_bar();
    let s = sd.s;
    let inv_sq = if ts.is_zero() {
        if !(s > -1.0) {
            return Err(Error::domain("t_best_zeno", s, "s > -1"));
        }
        0.5 * sd.alpha_s * n.powf(1.0 - s / 3.0) * wb.powf(s + 3.0) * gamma_fn(0.5 * (s + 3.0))?
    } else {
        if !(s > -2.0) {
            return Err(Error::domain("t_best_zeno", s, "s > -2"));
        }
        sd.alpha_s * ts.theta * n.powf((4.0 - s) / 3.0) * wb.powf(s + 2.0) * gamma_fn(0.5 * (s + 2.0))?
    };
    if !(inv_sq > 0.0) {
        return Err(Error::domain("t_best_zeno", sd.alpha_s, "alpha_s > 0"));
    }
    Ok(inv_sq.sqrt().recip())
}

/// Whether the GHZ advantage survives for spectral exponent `s`.
pub fn classify_threshold(s: f64, dimension: Dimension, temperature_class: TemperatureClass) -> Result<ThresholdReport> {
    if !(s > -1.0) {
        return Err(Error::domain("classify_threshold", s, "s > -1"));
    }
    let (all_time, zeno) = match (dimension, temperature_class) {
        (Dimension::Three, TemperatureClass::Zero) => (5.0, 3.0),
        (Dimension::Three, TemperatureClass::Finite) => (6.0, 4.0),
        (Dimension::One, TemperatureClass::Zero) => (3.0, 1.0),
        (Dimension::One, TemperatureClass::Finite) => (4.0, 1.0),
    };
    Ok(ThresholdReport {
        s,
        dimension,
        temperature_class,
        all_time_suppression: s > all_time,
        zeno_suppression: s > zeno,
    })
}

/// `F(t; N)` on a grid; row `i` belongs to `n_grid[i]`, with the row maximum flagged.
pub fn sweep_fisher(
    sd: &SpectralDensity,
    g_template: &CloudGeometry,
    ts: &ThermalState,
    mode: Mode,
    t_grid: &[f64],
    n_grid: &[usize],
    spec: &QuadratureSpec,
) -> Result<Vec<Vec<FisherPoint>>> {
    if t_grid.is_empty() || n_grid.is_empty() {
        return Err(Error::domain("sweep_fisher", 0.0, "nonempty grids"));
    }
    if t_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain("sweep_fisher", t_grid[0], "ascending t grid"));
    }
    if n_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain("sweep_fisher", n_grid[0] as f64, "ascending N grid"));
    }
    let cells: Vec<(usize, f64)> = n_grid
        .iter()
        .flat_map(|&n| t_grid.iter().map(move |&t| (n, t)))
        .collect();
    let points = cells
        .par_iter()
        .map(|&(n, t)| {
            let g = CloudGeometry::new(n, g_template.sigma, g_template.c)?;
            fisher_optimal(sd, &g, ts, t, mode, spec)
        })
        .collect::<Result<Vec<FisherPoint>>>()?;
    Ok(points
        .chunks(t_grid.len())
        .map(|row| {
            let mut row = row.to_vec();
            let mut arg = 0;
            for (i, p) in row.iter().enumerate() {
                if p.fisher > row[arg].fisher {
                    arg = i;
                }
            }
            row[arg].is_global_max = true;
            row
        })
        .collect())
}
