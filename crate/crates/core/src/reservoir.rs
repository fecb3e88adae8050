//! Power-law spectral density and the thermal occupation kernel.
//!
//! Frequencies are plain `f64` in whatever unit the caller picked; temperatures are
//! `theta = k_B T / (hbar w_ref)` in the same unit.

use crate::error::{Error, Result};
use crate::numerics::gamma_fn;

/// `J(w) = alpha_s * w^s * exp(-w^2 / w_s^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDensity {
    pub s: f64,
    pub alpha_s: f64,
    pub w_s: f64,
}

impl SpectralDensity {
    pub fn new(s: f64, alpha_s: f64, w_s: f64) -> Result<Self> {
        if !(s > -1.0) || !s.is_finite() {
            return Err(Error::domain("SpectralDensity", s, "s > -1"));
        }
        if !(alpha_s >= 0.0) || !alpha_s.is_finite() {
            return Err(Error::domain("SpectralDensity", alpha_s, "alpha_s >= 0"));
        }
        if !(w_s > 0.0) || !w_s.is_finite() {
            return Err(Error::domain("SpectralDensity", w_s, "w_s > 0"));
        }
        Ok(Self { s, alpha_s, w_s })
    }

    /// Builds the density from the combination `alpha_s w_ref^{s+1} Γ((s+1)/2) / 2`.
    ///
    /// This is the stationary collective dephasing per N² at zero temperature when
    /// `w_ref` is the collective cutoff.
    pub fn from_coupling_combo(s: f64, combo: f64, w_ref: f64, w_s: f64) -> Result<Self> {
        if !(w_ref > 0.0) || !w_ref.is_finite() {
            return Err(Error::domain("from_coupling_combo", w_ref, "w_ref > 0"));
        }
        if !(s > -1.0) {
            return Err(Error::domain("from_coupling_combo", s, "s > -1"));
        }
        let g = gamma_fn(0.5 * (s + 1.0))?;
        Self::new(s, 2.0 * combo / (w_ref.powf(s + 1.0) * g), w_s)
    }

    /// Inverse of [`SpectralDensity::from_coupling_combo`].
    pub fn coupling_combo(&self, w_ref: f64) -> f64 {
        let g = gamma_fn(0.5 * (self.s + 1.0)).unwrap_or(f64::NAN);
        0.5 * self.alpha_s * w_ref.powf(self.s + 1.0) * g
    }

    pub fn eval(&self, w: f64) -> Result<f64> {
        if !(w >= 0.0) {
            return Err(Error::domain("j_eval", w, "w >= 0"));
        }
        Ok(self.eval_unchecked(w))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, w: f64) -> f64 {
        if w == 0.0 {
            return if self.s == 0.0 { self.alpha_s } else { 0.0 };
        }
        let x = w / self.w_s;
        self.alpha_s * w.powf(self.s) * (-x * x).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    pub theta: f64,
}

impl ThermalState {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta >= 0.0) || !theta.is_finite() {
            return Err(Error::domain("ThermalState", theta, "theta >= 0"));
        }
        Ok(Self { theta })
    }

    pub fn zero() -> Self {
        Self { theta: 0.0 }
    }

    pub fn is_zero(&self) -> bool {
        self.theta == 0.0
    }

    /// `coth(w / (2 theta))`, exactly 1 at zero temperature.
    pub fn kernel(&self, w: f64) -> Result<f64> {
        if !(w > 0.0) {
            return Err(Error::domain("thermal_kernel", w, "w > 0"));
        }
        Ok(self.kernel_unchecked(w))
    }

    #[inline]
    pub(crate) fn kernel_unchecked(&self, w: f64) -> f64 {
        if self.theta == 0.0 {
            return 1.0;
        }
        let r = w / self.theta;
        if r < 1e-4 {
            2.0 / r + r / 6.0
        } else {
            let x = 0.5 * r;
            if x > 20.0 {
                // coth(x) = 1 + 2/(e^{2x} - 1)
                1.0 + 2.0 / (2.0 * x).exp_m1()
            } else {
                1.0 / x.tanh()
            }
        }
    }
}
