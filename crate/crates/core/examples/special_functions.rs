//! Gamma, Kummer M across its branches and the oscillatory integrator.

use collective_dephasing::numerics::{
    gamma_fn, integrate_semi_infinite, kummer_m, kummer_m_asymptotic, kummer_m_series, QuadratureSpec, KUMMER_SWITCH,
};

fn main() -> collective_dephasing::Result<()> {
    for x in [0.5, 1.0, 2.5, 3.5, 10.0] {
        println!("Gamma({x}) = {:.16}", gamma_fn(x)?);
    }

    println!("\nM(-s/2, 1/2, z) near the branch switch at z = {KUMMER_SWITCH}");
    for s in [1.0, 3.0, 5.0] {
        for z in [20.0, 30.0, 40.0] {
            let a = -0.5 * s;
            let series = kummer_m_series(a, 0.5, z)?;
            let asym = kummer_m_asymptotic(a, 0.5, z)?;
            println!(
                "s={s} z={z:<4} M={:.15e} series/asymptotic rel diff {:.1e}",
                kummer_m(a, 0.5, z)?,
                ((series - asym) / series).abs()
            );
        }
    }
    println!("M(-2, 1/2, z) at z = 3: {}", kummer_m(-2.0, 0.5, 3.0)?);

    let t = 5.0;
    let q = integrate_semi_infinite(
        |w: f64| w.powi(3) * (-w * w).exp() * (1.0 - (t * w).cos()),
        Some(2.0 * std::f64::consts::PI / t),
        &QuadratureSpec::default(),
    )?;
    println!("\nint w^3 e^(-w^2) (1 - cos 5w) = {:.12} (+- {:.1e}, {} panels)", q.value, q.error_bound, q.panels);
    Ok(())
}
