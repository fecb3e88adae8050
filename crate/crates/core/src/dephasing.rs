//! Dephasing factor and reservoir frequency shift of an N-qubit GHZ state.
//!
//! Every quantity here is an integral of the form
//! `P ∫₀^∞ w^s exp(-a w²) coth(w / 2θ) k(w, t) dw`. The collective and
//! single-qubit cases share one [`DephasingKernel`] and differ only in `P` and `a`.

use std::f64::consts::PI;

use crate::cloud::{structure_factor_from_distances, AtomPositions, CloudGeometry};
use crate::error::{Error, Result};
use crate::numerics::{gamma_fn, integrate_with_scale, kummer_m_scaled, QuadratureSpec};
use crate::reservoir::{SpectralDensity, ThermalState};

/// γ and Δ at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingResult {
    pub t: f64,
    pub gamma: f64,
    pub delta: f64,
}

/// Zero-temperature closed form together with its validity flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub gamma: f64,
    /// Set when `w_s < 10 w_bar / N^{1/3}`; the neglected cutoff then matters.
    pub cutoff_warning: bool,
}

/// Oracle value for one concrete atom configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleGamma {
    /// Full dephasing with the discrete structure factor.
    pub full: f64,
    /// Contribution of the pair (interference) terms only.
    pub coherent: f64,
}

/// `prefactor * ∫ w^s exp(-a w²) coth(w/2θ) (...) dw`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingKernel {
    pub prefactor: f64,
    pub s: f64,
    /// Total Gaussian exponent.
    pub a: f64,
    pub thermal: ThermalState,
}

impl DephasingKernel {
    /// Collective kernel: `N² J(w) exp(-w² σ² N^{2/3} / c²)`.
    pub fn collective(sd: &SpectralDensity, g: &CloudGeometry, ts: &ThermalState) -> Self {
        let n = g.n_atoms as f64;
        Self {
            prefactor: n * n * sd.alpha_s,
            s: sd.s,
            a: collective_exponent(g) + sd.w_s.powi(-2),
            thermal: *ts,
        }
    }

    /// Single-qubit kernel: `J(w)` alone.
    pub fn single_qubit(sd: &SpectralDensity, ts: &ThermalState) -> Self {
        Self {
            prefactor: sd.alpha_s,
            s: sd.s,
            a: sd.w_s.powi(-2),
            thermal: *ts,
        }
    }

    #[inline]
    fn weight(&self, w: f64) -> f64 {
        if w == 0.0 {
            return 0.0;
        }
        self.prefactor * w.powf(self.s) * (-self.a * w * w).exp() * self.thermal.kernel_unchecked(w)
    }

    fn scale(&self) -> f64 {
        self.a.sqrt().recip()
    }

    fn integrate(&self, f: impl Fn(f64) -> f64, t: Option<f64>, spec: &QuadratureSpec) -> Result<f64> {
        if self.prefactor == 0.0 {
            return Ok(0.0);
        }
        let period = t.filter(|&t| t > 0.0).map(|t| 2.0 * PI / t);
        Ok(integrate_with_scale(f, period, self.scale(), spec)?.value)
    }

    /// `∫ K(w) (1 - cos wt) dw`.
    pub fn gamma(&self, t: f64, spec: &QuadratureSpec) -> Result<f64> {
        check_time(t)?;
        if t == 0.0 {
            return Ok(0.0);
        }
        self.integrate(
            |w| {
                let h = (0.5 * w * t).sin();
                2.0 * h * h * self.weight(w)
            },
            Some(t),
            spec,
        )
    }

    /// `dγ/dt = ∫ K(w) w sin(wt) dw`.
    pub fn gamma_rate(&self, t: f64, spec: &QuadratureSpec) -> Result<f64> {
        check_time(t)?;
        if t == 0.0 {
            return Ok(0.0);
        }
        self.integrate(|w| w * (w * t).sin() * self.weight(w), Some(t), spec)
    }

    /// `∫ K(w) dw`, the `t → ∞` limit of γ.
    pub fn stationary(&self, spec: &QuadratureSpec) -> Result<f64> {
        self.integrate(|w| self.weight(w), None, spec)
    }

    /// `f` in the short-time law `γ ≈ f t²`.
    pub fn zeno_coefficient(&self, spec: &QuadratureSpec) -> Result<f64> {
        Ok(0.5 * self.integrate(|w| w * w * self.weight(w), None, spec)?)
    }

    /// Zero-temperature value by the Kummer closed form; ignores `thermal`.
    pub fn gamma_closed_form(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        if !(self.s > -1.0) {
            return Err(Error::domain("gamma_closed_form_t0", self.s, "s > -1"));
        }
        let amplitude = 0.5 * self.prefactor * gamma_fn(0.5 * (self.s + 1.0))? * self.a.powf(-0.5 * (self.s + 1.0));
        if t == 0.0 {
            return Ok(0.0);
        }
        let z = t * t / (4.0 * self.a);
        Ok(amplitude * (1.0 - kummer_m_scaled(-0.5 * self.s, 0.5, z)?))
    }

    /// Zero-temperature `t → ∞` limit in closed form.
    pub fn stationary_closed_form(&self) -> Result<f64> {
        if !(self.s > -1.0) {
            return Err(Error::domain("gamma_stationary", self.s, "s > -1"));
        }
        Ok(0.5 * self.prefactor * gamma_fn(0.5 * (self.s + 1.0))? * self.a.powf(-0.5 * (self.s + 1.0)))
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain("dephasing", t, "finite t >= 0"));
    }
    Ok(())
}

/// `σ² N^{2/3} / c²`.
pub fn collective_exponent(g: &CloudGeometry) -> f64 {
    let w = g.cloud_width() / g.c;
    w * w
}

/// Collective dephasing factor γ_N(θ, t) by quadrature.
pub fn gamma_collective(
    sd: &SpectralDensity,
    g: &CloudGeometry,
    ts: &ThermalState,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    DephasingKernel::collective(sd, g, ts).gamma(t, spec)
}

/// Zero-temperature closed form with the collective Gaussian as the only cutoff.
pub fn gamma_closed_form_t0(sd: &SpectralDensity, g: &CloudGeometry, t: f64) -> Result<ClosedForm> {
    let n = g.n_atoms as f64;
    let mut k = DephasingKernel::collective(sd, g, &ThermalState::zero());
    k.a = collective_exponent(g);
    Ok(ClosedForm {
        gamma: k.gamma_closed_form(t)?,
        cutoff_warning: sd.w_s < 10.0 * g.w_bar() / n.cbrt(),
    })
}

/// Zero-temperature closed form including the spectral cutoff in the Gaussian.
///
/// Exact for the quadrature integrand at θ = 0.
pub fn gamma_closed_form_t0_exact(sd: &SpectralDensity, g: &CloudGeometry, t: f64) -> Result<f64> {
    DephasingKernel::collective(sd, g, &ThermalState::zero()).gamma_closed_form(t)
}

/// Single-qubit dephasing factor γ₁(θ, t).
pub fn gamma_single_qubit(sd: &SpectralDensity, ts: &ThermalState, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    DephasingKernel::single_qubit(sd, ts).gamma(t, spec)
}

/// `t → ∞` limit of γ_N: closed form at θ = 0, quadrature otherwise.
pub fn gamma_stationary(sd: &SpectralDensity, g: &CloudGeometry, ts: &ThermalState) -> Result<f64> {
    if ts.is_zero() {
        let mut k = DephasingKernel::collective(sd, g, ts);
        k.a = collective_exponent(g);
        return k.stationary_closed_form();
    }
    if !(sd.s > 0.0) {
        return Err(Error::domain("gamma_stationary", sd.s, "s > 0 at finite temperature"));
    }
    DephasingKernel::collective(sd, g, ts).stationary(&QuadratureSpec::default())
}

/// `t → ∞` limit of the quadrature integrand at any temperature.
pub fn gamma_stationary_quadrature(
    sd: &SpectralDensity,
    g: &CloudGeometry,
    ts: &ThermalState,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !ts.is_zero() && !(sd.s > 0.0) {
        return Err(Error::domain("gamma_stationary", sd.s, "s > 0 at finite temperature"));
    }
    DephasingKernel::collective(sd, g, ts).stationary(spec)
}

/// Reservoir-induced phase `Δ_N(t) = -N² ∫ J(w) (wt - sin wt) exp(-w² σ² N^{2/3} / c²) dw`.
pub fn delta_shift(sd: &SpectralDensity, g: &CloudGeometry, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let k = DephasingKernel::collective(sd, g, &ThermalState::zero());
    let v = k.integrate(
        |w| {
            let x = w * t;
            let r = if x < 1e-3 {
                let x3 = x * x * x;
                x3 / 6.0 - x3 * x * x / 120.0
            } else {
                x - x.sin()
            };
            r * k.weight(w)
        },
        Some(t),
        spec,
    )?;
    Ok(-v)
}

/// γ and Δ together.
pub fn dephasing(
    sd: &SpectralDensity,
    g: &CloudGeometry,
    ts: &ThermalState,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<DephasingResult> {
    Ok(DephasingResult {
        t,
        gamma: gamma_collective(sd, g, ts, t, spec)?,
        delta: delta_shift(sd, g, t, spec)?,
    })
}

/// Exact dephasing of a concrete configuration, using the angular-averaged
/// discrete structure factor in place of the continuum Gaussian.
pub fn gamma_discrete_oracle(
    sd: &SpectralDensity,
    p: &AtomPositions,
    g: &CloudGeometry,
    ts: &ThermalState,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<OracleGamma> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(OracleGamma { full: 0.0, coherent: 0.0 });
    }
    let n = p.len();
    let d = p.pair_distances();
    let k = DephasingKernel::single_qubit(sd, ts);
    let single = k.gamma(t, spec)?;
    let coherent = k.integrate(
        |w| {
            let pairs = structure_factor_from_distances(n, &d, w / g.c).unwrap_or(f64::NAN) - n as f64;
            let h = (0.5 * w * t).sin();
            2.0 * h * h * k.weight(w) * pairs
        },
        Some(t),
        spec,
    )?;
    Ok(OracleGamma {
        full: n as f64 * single + coherent,
        coherent,
    })
}
