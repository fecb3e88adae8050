//! γ_N(θ, t) and Δ_N(t) for a cloud of 1000 atoms, s = 4.
//!
//! ```text
//! cargo run --example dephasing_curve
//! ```

use collective_dephasing::cloud::CloudGeometry;
use collective_dephasing::dephasing::{dephasing, gamma_stationary};
use collective_dephasing::numerics::QuadratureSpec;
use collective_dephasing::reservoir::{SpectralDensity, ThermalState};

fn main() -> collective_dephasing::Result<()> {
    let sd = SpectralDensity::from_coupling_combo(4.0, 0.12, 1.0, 1.0)?;
    let g = CloudGeometry::natural(1000)?;
    let spec = QuadratureSpec::default();

    println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "t", "gamma(0)", "gamma(0.5)", "gamma(1)", "delta");
    for t in [0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0] {
        let mut row = format!("{t:>8}");
        for theta in [0.0, 0.5, 1.0] {
            let r = dephasing(&sd, &g, &ThermalState::new(theta)?, t, &spec)?;
            row += &format!(" {:>12.6}", r.gamma);
        }
        let r = dephasing(&sd, &g, &ThermalState::zero(), t, &spec)?;
        println!("{row} {:>12.5e}", r.delta);
    }

    for theta in [0.0, 0.5, 1.0] {
        let v = gamma_stationary(&sd, &g, &ThermalState::new(theta)?)?;
        println!("gamma(inf) at theta = {theta}: {v:.6}");
    }
    Ok(())
}
