//! Optimal interrogation time: both selection rules and the short-time estimate.

use collective_dephasing::cloud::CloudGeometry;
use collective_dephasing::metrology::{best_time_with, t_best_zeno, BestTimeRule, Mode};
use collective_dephasing::numerics::QuadratureSpec;
use collective_dephasing::reservoir::{SpectralDensity, ThermalState};

fn main() -> collective_dephasing::Result<()> {
    let sd = SpectralDensity::from_coupling_combo(4.0, 0.12, 1.0, 1.0)?;
    let spec = QuadratureSpec::default();
    let t_max = 100.0;
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "N", "first", "global", "zeno", "zeno(T=1)");
    for n in [100usize, 254, 255, 1000, 10_000, 100_000, 1_000_000] {
        let g = CloudGeometry::natural(n)?;
        let th = ThermalState::zero();
        let first = best_time_with(&sd, &g, &th, Mode::GhzCollective, t_max, BestTimeRule::FirstRoot, &spec)?;
        let global = best_time_with(&sd, &g, &th, Mode::GhzCollective, t_max, BestTimeRule::GlobalMax, &spec)?;
        let z0 = t_best_zeno(&sd, &g, &th)?;
        let z1 = t_best_zeno(&sd, &g, &ThermalState::new(1.0)?)?;
        println!("{n:>8} {:>10.4} {:>10.4} {z0:>10.4} {z1:>10.4}", first.t, global.t);
    }
    Ok(())
}
