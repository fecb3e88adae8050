//! Special functions and quadrature used by the dephasing formulas.

mod gamma;
mod kummer;
mod quadrature;

pub use gamma::{gamma_fn, ln_gamma, recip_gamma};
pub use kummer::{
    kummer_m, kummer_m_asymptotic, kummer_m_polynomial, kummer_m_scaled, kummer_m_series,
    KUMMER_GUARD_BAND, KUMMER_SWITCH,
};
pub use quadrature::{
    integrate_semi_infinite, integrate_semi_infinite_report, integrate_with_scale, Quadrature,
    QuadratureSpec,
};

/// `cos(pi * x)`, exact at integers and half-integers.
pub(crate) fn cos_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.5 || r == 1.5 {
        0.0
    } else if r == 0.0 {
        1.0
    } else if r == 1.0 {
        -1.0
    } else {
        (std::f64::consts::PI * r).cos()
    }
}

pub(crate) fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}
