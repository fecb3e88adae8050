use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use super::RunError;
use crate::metrology::{BestTimeRule, Dimension, Mode};
use crate::numerics::QuadratureSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Computation {
    /// γ(t) for every temperature in `theta`.
    GammaCurve,
    /// F₁(t) and F_N(t) for every N.
    FisherSweep,
    /// F_N(t_best) / F₁(t_max) versus N for every (s, coupling) pair.
    RatioScan,
    /// t_best over the (θ, N) grid.
    BestTimeScan,
    /// γ(∞) versus θ for every N.
    StationaryScan,
    /// Suppression thresholds for every s.
    Threshold,
    /// Seed-averaged discrete-atom γ against the continuum.
    OracleComparison,
}

impl Computation {
    pub const ALL: [Computation; 7] = [
        Computation::GammaCurve,
        Computation::FisherSweep,
        Computation::RatioScan,
        Computation::BestTimeScan,
        Computation::StationaryScan,
        Computation::Threshold,
        Computation::OracleComparison,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Computation::GammaCurve => "gamma_curve",
            Computation::FisherSweep => "fisher_sweep",
            Computation::RatioScan => "ratio_scan",
            Computation::BestTimeScan => "best_time_scan",
            Computation::StationaryScan => "stationary_scan",
            Computation::Threshold => "threshold",
            Computation::OracleComparison => "oracle_comparison",
        }
    }
}

impl FromStr for Computation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Computation::ALL
            .iter()
            .find(|c| c.name() == s)
            .copied()
            .ok_or_else(|| {
                let names: Vec<_> = Computation::ALL.iter().map(|c| c.name()).collect();
                format!("unknown computation `{s}` ({})", names.join(" | "))
            })
    }
}

/// A fully resolved run description. Frequencies are in units of `w_bar`,
/// times in `1/w_bar`, temperatures in `hbar w_bar / k_B`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub name: String,
    pub computation: Computation,
    pub s: Vec<f64>,
    /// `alpha_s w_bar^{s+1} Γ((s+1)/2) / 2`, one per entry of `s`.
    pub coupling_combo: Vec<f64>,
    pub theta: Vec<f64>,
    pub n_list: Vec<usize>,
    pub t_min: f64,
    pub t_max: f64,
    pub t_points_per_decade: usize,
    pub w_s_over_wbar: f64,
    pub mode: Mode,
    pub best_time_rule: BestTimeRule,
    pub dimension: Dimension,
    pub seed: u64,
    pub seeds: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    pub threads: usize,
    pub version: String,
}

const KEYS: &[&str] = &[
    "name",
    "computation",
    "s",
    "coupling_combo",
    "theta",
    "n_list",
    "n_min",
    "n_max",
    "n_per_decade",
    "t_min",
    "t_max",
    "t_points_per_decade",
    "w_s_over_wbar",
    "mode",
    "best_time_rule",
    "dimension",
    "seed",
    "seeds",
    "rel_tol",
    "abs_tol",
    "max_panels",
    "threads",
    "version",
];

impl ScenarioConfig {
    pub fn from_file(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path).map_err(|e| RunError::Usage(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, RunError> {
        let mut raw: Vec<(usize, String, String)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((k, v)) = content.split_once('=') else {
                return Err(parse_err(line_no, content, "expected `key = value`"));
            };
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(parse_err(line_no, k, "unknown key"));
            }
            if raw.iter().any(|(_, rk, _)| rk == k) {
                return Err(parse_err(line_no, k, "duplicate key"));
            }
            raw.push((line_no, k.to_string(), v.to_string()));
        }
        let get = |k: &str| raw.iter().find(|(_, rk, _)| rk == k).map(|(l, _, v)| (*l, v.as_str()));

        let computation = match get("computation") {
            Some((l, v)) => v.parse::<Computation>().map_err(|m| parse_err(l, "computation", &m))?,
            None => return Err(parse_err(0, "computation", "missing required key")),
        };
        let s = match get("s") {
            Some((l, v)) => list::<f64>(l, "s", v)?,
            None => return Err(parse_err(0, "s", "missing required key")),
        };
        let coupling_combo = match get("coupling_combo") {
            Some((l, v)) => list::<f64>(l, "coupling_combo", v)?,
            None => vec![0.12],
        };
        let n_list = match (get("n_list"), get("n_min")) {
            (Some(_), Some((l, _))) => return Err(parse_err(l, "n_min", "give either n_list or n_min/n_max")),
            (Some((l, v)), None) => list::<f64>(l, "n_list", v)?
                .into_iter()
                .map(|x| count(l, "n_list", x))
                .collect::<Result<Vec<_>, _>>()?,
            (None, Some((l, v))) => {
                let lo = scalar::<f64>(l, "n_min", v)?;
                let (lm, vm) = get("n_max").ok_or_else(|| parse_err(l, "n_max", "required with n_min"))?;
                let hi = scalar::<f64>(lm, "n_max", vm)?;
                let per = match get("n_per_decade") {
                    Some((lp, vp)) => scalar::<usize>(lp, "n_per_decade", vp)?,
                    None => 10,
                };
                log_counts(l, lo, hi, per)?
            }
            (None, None) => vec![1000],
        };
        for k in ["n_max", "n_per_decade"] {
            if let (Some((l, _)), None) = (get(k), get("n_min")) {
                return Err(parse_err(l, k, "only valid together with n_min"));
            }
        }

        let cfg = ScenarioConfig {
            name: get("name").map(|(_, v)| v.to_string()).unwrap_or_else(|| computation.name().to_string()),
            computation,
            s,
            coupling_combo,
            theta: opt(get("theta"), |l, v| list::<f64>(l, "theta", v), vec![0.0])?,
            n_list,
            t_min: opt(get("t_min"), |l, v| scalar(l, "t_min", v), 0.01)?,
            t_max: opt(get("t_max"), |l, v| scalar(l, "t_max", v), 100.0)?,
            t_points_per_decade: opt(get("t_points_per_decade"), |l, v| scalar(l, "t_points_per_decade", v), 400)?,
            w_s_over_wbar: opt(get("w_s_over_wbar"), |l, v| scalar(l, "w_s_over_wbar", v), 1.0)?,
            mode: opt(get("mode"), |l, v| named(l, "mode", v), Mode::GhzCollective)?,
            best_time_rule: opt(get("best_time_rule"), |l, v| named(l, "best_time_rule", v), BestTimeRule::GlobalMax)?,
            dimension: opt(get("dimension"), |l, v| dimension(l, v), Dimension::Three)?,
            seed: opt(get("seed"), |l, v| scalar(l, "seed", v), 0)?,
            seeds: opt(get("seeds"), |l, v| scalar(l, "seeds", v), 1000)?,
            rel_tol: opt(get("rel_tol"), |l, v| scalar(l, "rel_tol", v), QuadratureSpec::default().rel_tol)?,
            abs_tol: opt(get("abs_tol"), |l, v| scalar(l, "abs_tol", v), QuadratureSpec::default().abs_tol)?,
            max_panels: opt(get("max_panels"), |l, v| scalar(l, "max_panels", v), QuadratureSpec::default().max_panels)?,
            threads: opt(get("threads"), |l, v| scalar(l, "threads", v), 0)?,
            version: get("version").map(|(_, v)| v.to_string()).unwrap_or_else(|| crate::VERSION.to_string()),
        };
        Ok(cfg)
    }

    /// Checks every field against the domain of the module it feeds.
    pub fn validate(&self) -> Result<(), RunError> {
        let bad = |field: &'static str, requirement: &str| {
            Err(RunError::Invalid {
                field,
                requirement: requirement.to_string(),
            })
        };
        if self.name.is_empty() || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || "_-.".contains(c)) {
            return bad("name", "nonempty, characters [A-Za-z0-9_.-]");
        }
        if self.s.is_empty() || self.s.iter().any(|&s| !(s > -1.0) || !s.is_finite()) {
            return bad("s", "every s > -1");
        }
        if self.coupling_combo.len() != self.s.len() && self.coupling_combo.len() != 1 {
            return bad("coupling_combo", "one value, or one per s");
        }
        if self.coupling_combo.iter().any(|&c| !(c >= 0.0) || !c.is_finite()) {
            return bad("coupling_combo", "every coupling_combo >= 0");
        }
        if self.theta.is_empty() || self.theta.iter().any(|&t| !(t >= 0.0) || !t.is_finite()) {
            return bad("theta", "every theta >= 0");
        }
        if self.n_list.is_empty() || self.n_list.contains(&0) {
            return bad("n_list", "every N >= 1");
        }
        if !(self.t_min > 0.0 && self.t_min.is_finite()) {
            return bad("t_min", "t_min > 0");
        }
        if !(self.t_max > self.t_min && self.t_max.is_finite()) {
            return bad("t_max", "t_max > t_min");
        }
        if self.t_points_per_decade == 0 {
            return bad("t_points_per_decade", "t_points_per_decade >= 1");
        }
        if !(self.w_s_over_wbar > 0.0 && self.w_s_over_wbar.is_finite()) {
            return bad("w_s_over_wbar", "w_s_over_wbar > 0");
        }
        if self.seeds == 0 {
            return bad("seeds", "seeds >= 1");
        }
        if let Err(e) = self.quadrature() {
            return bad("rel_tol", &e.to_string());
        }
        Ok(())
    }

    pub fn quadrature(&self) -> crate::Result<QuadratureSpec> {
        QuadratureSpec::new(self.rel_tol, self.abs_tol, self.max_panels)
    }

    pub fn coupling_for(&self, i: usize) -> f64 {
        if self.coupling_combo.len() == 1 {
            self.coupling_combo[0]
        } else {
            self.coupling_combo[i]
        }
    }

    /// Log-spaced time grid `[t_min, t_max]`.
    pub fn time_grid(&self) -> Vec<f64> {
        log_grid(self.t_min, self.t_max, self.t_points_per_decade)
    }

    /// Every key with its resolved value, in config syntax.
    pub fn to_meta(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        kv("name", self.name.clone());
        kv("computation", self.computation.name().to_string());
        kv("s", join(&self.s));
        kv("coupling_combo", join(&self.coupling_combo));
        kv("theta", join(&self.theta));
        kv("n_list", self.n_list.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", "));
        kv("t_min", num(self.t_min));
        kv("t_max", num(self.t_max));
        kv("t_points_per_decade", self.t_points_per_decade.to_string());
        kv("w_s_over_wbar", num(self.w_s_over_wbar));
        kv("mode", self.mode.name().to_string());
        kv("best_time_rule", self.best_time_rule.name().to_string());
        kv(
            "dimension",
            match self.dimension {
                Dimension::One => "1",
                Dimension::Three => "3",
            }
            .to_string(),
        );
        kv("seed", self.seed.to_string());
        kv("seeds", self.seeds.to_string());
        kv("rel_tol", num(self.rel_tol));
        kv("abs_tol", num(self.abs_tol));
        kv("max_panels", self.max_panels.to_string());
        kv("threads", self.threads.to_string());
        kv("version", self.version.clone());
        out
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

fn join(v: &[f64]) -> String {
    v.iter().map(|&x| num(x)).collect::<Vec<_>>().join(", ")
}

pub(crate) fn log_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    let decades = (hi / lo).log10();
    let steps = (decades * per_decade as f64).ceil().max(1.0) as usize;
    (0..=steps)
        .map(|i| match i {
            0 => lo,
            i if i == steps => hi,
            i => lo * 10f64.powf(decades * i as f64 / steps as f64),
        })
        .collect()
}

fn log_counts(line: usize, lo: f64, hi: f64, per_decade: usize) -> Result<Vec<usize>, RunError> {
    if !(lo >= 1.0) || !(hi >= lo) || !hi.is_finite() || per_decade == 0 {
        return Err(parse_err(line, "n_min", "need 1 <= n_min <= n_max and n_per_decade >= 1"));
    }
    let mut out: Vec<usize> = log_grid(lo, hi, per_decade)
        .into_iter()
        .map(|x| x.round() as usize)
        .collect();
    out.dedup();
    Ok(out)
}

fn parse_err(line: usize, field: &str, message: &str) -> RunError {
    RunError::Parse {
        line,
        field: field.to_string(),
        message: message.to_string(),
    }
}

fn scalar<T: FromStr>(line: usize, field: &str, v: &str) -> Result<T, RunError> {
    v.parse::<T>()
        .map_err(|_| parse_err(line, field, &format!("cannot parse `{v}`")))
}

fn list<T: FromStr>(line: usize, field: &str, v: &str) -> Result<Vec<T>, RunError> {
    v.split(',').map(|x| scalar(line, field, x.trim())).collect()
}

fn named<T: FromStr<Err = String>>(line: usize, field: &str, v: &str) -> Result<T, RunError> {
    v.parse::<T>().map_err(|m| parse_err(line, field, &m))
}

fn dimension(line: usize, v: &str) -> Result<Dimension, RunError> {
    match v {
        "1" | "1d" | "1D" => Ok(Dimension::One),
        "3" | "3d" | "3D" => Ok(Dimension::Three),
        _ => Err(parse_err(line, "dimension", "expected 1 or 3")),
    }
}

fn count(line: usize, field: &str, x: f64) -> Result<usize, RunError> {
    if x >= 1.0 && x == x.floor() && x < 1e15 {
        Ok(x as usize)
    } else {
        Err(parse_err(line, field, &format!("`{x}` is not a positive integer")))
    }
}

fn opt<T>(
    found: Option<(usize, &str)>,
    parse: impl Fn(usize, &str) -> Result<T, RunError>,
    default: T,
) -> Result<T, RunError> {
    match found {
        Some((l, v)) => parse(l, v),
        None => Ok(default),
    }
}
