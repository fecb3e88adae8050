//! Kummer's confluent hypergeometric function M(a, b, z) for real a, b and z >= 0.
//!
//! Terminating cases (a = 0, -1, -2, ...) are summed as polynomials. Otherwise the
//! power series is used below [`KUMMER_SWITCH`] and the large-z expansion above it;
//! within two units of the switch both branches are evaluated and must agree to
//! [`KUMMER_GUARD_BAND`].

use crate::error::{Error, Result};

use super::gamma::gamma_real;
use super::quadrature::{integrate_interval, integrate_semi_infinite_report, QuadratureSpec};
use super::{cos_pi, is_non_positive_integer, recip_gamma};

/// Argument at which evaluation moves from the power series to the asymptotic expansion.
pub const KUMMER_SWITCH: f64 = 30.0;
/// Relative agreement required between the two branches near the switch.
pub const KUMMER_GUARD_BAND: f64 = 1e-9;

const WINDOW: f64 = 2.0;
const MAX_TERMS: usize = 5000;
const SERIES_LOSS_LIMIT: f64 = 1e-10;
const ASYMPTOTIC_LIMIT: f64 = 1e-9;
const MAX_REMAINDER_TERMS: usize = 60;

fn validate(a: f64, b: f64, z: f64) -> Result<()> {
    if !a.is_finite() {
        return Err(Error::domain("kummer_m", a, "finite a"));
    }
    if !b.is_finite() || is_non_positive_integer(b) {
        return Err(Error::domain("kummer_m", b, "b not a non-positive integer"));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::domain("kummer_m", z, "finite z >= 0"));
    }
    Ok(())
}

/// Exact sum of the terminating series for a = -m.
pub fn kummer_m_polynomial(a: f64, b: f64, z: f64) -> Result<f64> {
    validate(a, b, z)?;
    if !is_non_positive_integer(a) {
        return Err(Error::domain("kummer_m_polynomial", a, "a a non-positive integer"));
    }
    let degree = (-a) as usize;
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..degree {
        let n = n as f64;
        term *= (a + n) / (b + n) * z / (n + 1.0);
        sum += term;
    }
    Ok(sum)
}

/// Power series Σ (a)_n/(b)_n zⁿ/n!, with a check on cancellation loss.
pub fn kummer_m_series(a: f64, b: f64, z: f64) -> Result<f64> {
    validate(a, b, z)?;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut largest = 1.0_f64;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) / (b + nf) * z / (nf + 1.0);
        sum += term;
        largest = largest.max(term.abs());
        // past the peak the terms fall off geometrically
        if term == 0.0 || nf + 1.0 > z && term.abs() <= f64::EPSILON * 1e-2 * sum.abs() {
            let loss = largest * f64::EPSILON * 4.0;
            if loss > SERIES_LOSS_LIMIT * sum.abs().max(1.0) {
                return Err(Error::Accuracy {
                    what: "kummer_m series (cancellation)",
                    estimate: sum,
                    error_bound: loss,
                });
            }
            return Ok(sum);
        }
    }
    Err(Error::Accuracy {
        what: "kummer_m series (no convergence)",
        estimate: sum,
        error_bound: term.abs(),
    })
}

/// Large-z parts: M(a,b,z) = e^z * dominant + subdominant, plus an error estimate
/// on the scaled value e^{-z} M.
///
/// The dominant series is cut at its smallest term and the remainder is added in
/// closed form: its coefficients split exactly into a short sum of Γ(k + q) terms
/// (finite when 1 - a or b - a is a positive integer), each of which resums to a
/// principal-value Laplace integral. This removes the e^{-z}-sized truncation error
/// of the plain expansion.
fn asymptotic_parts(a: f64, b: f64, z: f64) -> Result<(f64, f64, f64)> {
    let gb = gamma_real(b);

    let mut dominant = 0.0;
    let mut dominant_err = 0.0;
    let c1 = gb * recip_gamma(a);
    if c1 != 0.0 {
        let alpha = 1.0 - a;
        let beta = b - a;
        let (s, first_omitted, omitted_index) =
            truncated_sum(|k, prev| prev * (alpha + k) * (beta + k) / ((k + 1.0) * z));
        let (rem, rem_err) = if first_omitted == 0.0 {
            (0.0, 0.0)
        } else {
            borel_remainder(alpha, beta, z, omitted_index)?
        };
        let pref = c1 * z.powf(a - b);
        dominant = pref * (s + rem);
        dominant_err = (pref * rem_err).abs() + (pref * s).abs() * 4.0 * f64::EPSILON;
    }

    let mut subdominant = 0.0;
    let mut sub_err = 0.0;
    let c2 = gb * recip_gamma(b - a) * cos_pi(a);
    if c2 != 0.0 {
        let (s, err, _) = truncated_sum(|k, prev| prev * (a + k) * (a - b + 1.0 + k) / ((k + 1.0) * -z));
        let pref = c2 * z.powf(-a);
        subdominant = pref * s;
        sub_err = (pref * err).abs();
    }

    let err = dominant_err + (-z).exp() * sub_err;
    Ok((dominant, subdominant, err))
}

/// Sums an asymptotic series up to its smallest term; returns
/// (sum, |first omitted term|, index of first omitted term).
fn truncated_sum(next: impl Fn(f64, f64) -> f64) -> (f64, f64, usize) {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 0..MAX_TERMS {
        let t = next(k as f64, term);
        if t == 0.0 {
            return (sum, 0.0, k + 1);
        }
        if t.abs() >= term.abs() {
            return (sum, t.abs(), k + 1);
        }
        if t.abs() <= f64::EPSILON * 1e-2 * sum.abs() {
            return (sum + t, 0.0, k + 2);
        }
        sum += t;
        term = t;
    }
    (sum, term.abs(), MAX_TERMS + 1)
}

/// Principal-value Borel sum of Σ_{k>=n} (α)_k (β)_k / k! z^{-k}.
///
/// Uses Γ(k+α)Γ(k+β)/Γ(k+1) = Σ_j (-1)^j (1-α)_j (1-β)_j / j! Γ(k+p-j), p = α+β-1,
/// and Σ_{k>=n} Γ(k+q) z^{-k} = z^q PV∫₀^∞ e^{-zv} v^{n+q-1} / (1-v) dv.
fn borel_remainder(alpha: f64, beta: f64, z: f64, n: usize) -> Result<(f64, f64)> {
    let p = alpha + beta - 1.0;
    let norm = recip_gamma(alpha) * recip_gamma(beta);
    let mut coeff = 1.0_f64;
    let mut total = 0.0;
    let mut err = 0.0;
    let mut previous = f64::INFINITY;
    let terminates = is_non_positive_integer(1.0 - alpha) || is_non_positive_integer(1.0 - beta);
    for j in 0..MAX_REMAINDER_TERMS {
        let jf = j as f64;
        if j > 0 {
            coeff *= -(1.0 - alpha + jf - 1.0) * (1.0 - beta + jf - 1.0) / jf;
        }
        if coeff == 0.0 {
            return Ok((norm * total, norm.abs() * err));
        }
        let q = p - jf;
        let m = n as f64 + q - 1.0;
        if m <= 0.0 {
            break;
        }
        let (pv, pv_err) = principal_value_laplace(z, m)?;
        // z^q e^{-z} PV, with e^{-z} folded into the exponent
        let scale = (q * z.ln() - z).exp();
        let contribution = coeff * scale * pv;
        // the j-sum is itself asymptotic unless it terminates
        if !terminates && contribution.abs() >= previous {
            return Ok((norm * total, norm.abs() * (err + previous)));
        }
        total += contribution;
        err += (coeff * scale).abs() * pv_err;
        previous = contribution.abs();
        if !terminates && previous <= f64::EPSILON * 1e-2 * total.abs() {
            return Ok((norm * total, norm.abs() * err));
        }
    }
    let tail = if previous.is_finite() { previous } else { f64::INFINITY };
    Ok((norm * total, norm.abs() * (err + tail)))
}

/// e^{z} PV∫₀^∞ e^{-zv} v^m / (1 - v) dv.
fn principal_value_laplace(z: f64, m: f64) -> Result<(f64, f64)> {
    let spec = QuadratureSpec::new(1e-12, 1e-300, 2000)?;
    // exponent of e^{z} e^{-zv} v^m, equal to zero at v = 1
    let log_h = move |v: f64| m * v.ln() - z * (v - 1.0);
    // h(v) - 1 over [0, 2]; PV∫₀² dv/(1-v) = 0
    let inner = integrate_interval(
        |v: f64| {
            let d = 1.0 - v;
            if d == 0.0 {
                m - z
            } else {
                log_h(v).exp_m1() / d
            }
        },
        0.0,
        2.0,
        &spec,
    );
    let outer = integrate_semi_infinite_report(|u: f64| -(log_h(2.0 + u)).exp() / (1.0 + u), None, &spec)?;
    let value = inner.value + outer.value;
    let bound = inner.error_bound + outer.error_bound;
    if !bound.is_finite() || !value.is_finite() {
        return Err(Error::Accuracy {
            what: "kummer_m asymptotic remainder quadrature",
            estimate: value,
            error_bound: bound,
        });
    }
    Ok((value, bound))
}

fn check_asymptotic(scaled: f64, err: f64) -> Result<()> {
    if err > ASYMPTOTIC_LIMIT * scaled.abs() && err > f64::MIN_POSITIVE {
        return Err(Error::Accuracy {
            what: "kummer_m asymptotic expansion",
            estimate: scaled,
            error_bound: err,
        });
    }
    Ok(())
}

/// Large-z expansion of M(a,b,z) on the positive real axis.
pub fn kummer_m_asymptotic(a: f64, b: f64, z: f64) -> Result<f64> {
    validate(a, b, z)?;
    if z == 0.0 {
        return Err(Error::domain("kummer_m_asymptotic", z, "z > 0"));
    }
    let (dom, sub, err) = asymptotic_parts(a, b, z)?;
    check_asymptotic(dom + (-z).exp() * sub, err)?;
    let v = if dom == 0.0 { sub } else { z.exp() * dom + sub };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain("kummer_m_asymptotic", z, "M(a,b,z) representable"))
    }
}

/// e^{-z} M(a, b, z); stays finite for large z where M itself overflows.
pub fn kummer_m_scaled(a: f64, b: f64, z: f64) -> Result<f64> {
    validate(a, b, z)?;
    if z == 0.0 {
        return Ok(1.0);
    }
    if is_non_positive_integer(a) {
        let p = kummer_m_polynomial(a, b, z)?;
        return Ok(if p == 0.0 { 0.0 } else { p * (-z).exp() });
    }
    let scaled_asymptotic = |z: f64| -> Result<f64> {
        let (dom, sub, err) = asymptotic_parts(a, b, z)?;
        let scaled = dom + (-z).exp() * sub;
        check_asymptotic(scaled, err)?;
        Ok(scaled)
    };
    if z < KUMMER_SWITCH - WINDOW {
        return Ok(kummer_m_series(a, b, z)? * (-z).exp());
    }
    if z > KUMMER_SWITCH + WINDOW {
        return scaled_asymptotic(z);
    }
    let series = kummer_m_series(a, b, z)? * (-z).exp();
    let asymptotic = scaled_asymptotic(z)?;
    let scale = series.abs().max(asymptotic.abs());
    if (series - asymptotic).abs() > KUMMER_GUARD_BAND * scale {
        return Err(Error::Accuracy {
            what: "kummer_m branch cross-validation",
            estimate: if z < KUMMER_SWITCH { series } else { asymptotic },
            error_bound: (series - asymptotic).abs(),
        });
    }
    Ok(if z < KUMMER_SWITCH { series } else { asymptotic })
}

/// Kummer's function M(a, b, z) for z >= 0.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64> {
    validate(a, b, z)?;
    if is_non_positive_integer(a) {
        return kummer_m_polynomial(a, b, z);
    }
    if z < KUMMER_SWITCH - WINDOW {
        return kummer_m_series(a, b, z);
    }
    let v = kummer_m_scaled(a, b, z)? * z.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain("kummer_m", z, "M(a,b,z) representable in f64"))
    }
}
