//! Kummer closed form against direct quadrature at zero temperature.

use collective_dephasing::cloud::CloudGeometry;
use collective_dephasing::dephasing::{gamma_closed_form_t0, gamma_closed_form_t0_exact, gamma_collective};
use collective_dephasing::numerics::QuadratureSpec;
use collective_dephasing::reservoir::{SpectralDensity, ThermalState};

fn main() -> collective_dephasing::Result<()> {
    let spec = QuadratureSpec::new(1e-11, 0.0, 4000)?;
    for s in [1.0, 2.0, 3.0, 4.0, 5.5] {
        for n in [100usize, 10_000] {
            let g = CloudGeometry::natural(n)?;
            for w_s in [1.0, 100.0 * g.w_bar() / (n as f64).cbrt()] {
                let sd = SpectralDensity::from_coupling_combo(s, 0.12, 1.0, w_s)?;
                for t in [1.0, 10.0, 100.0] {
                    let quad = gamma_collective(&sd, &g, &ThermalState::zero(), t, &spec)?;
                    let cf = gamma_closed_form_t0(&sd, &g, t)?;
                    let exact = gamma_closed_form_t0_exact(&sd, &g, t)?;
                    println!(
                        "s={s:<4} N={n:<6} w_s={w_s:<8.3} t={t:<5} quad={quad:.10e} collective-only={:.3e}{} with-cutoff={:.3e}",
                        (cf.gamma - quad).abs() / quad,
                        if cf.cutoff_warning { " (cutoff not negligible)" } else { "" },
                        (exact - quad).abs() / quad,
                    );
                }
            }
        }
    }
    Ok(())
}
