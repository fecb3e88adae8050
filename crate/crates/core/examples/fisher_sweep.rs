//! GHZ versus one-by-one Fisher information over t for several N.

use collective_dephasing::cloud::CloudGeometry;
use collective_dephasing::metrology::{cramer_rao_bound, sweep_fisher, Mode};
use collective_dephasing::numerics::QuadratureSpec;
use collective_dephasing::reservoir::{SpectralDensity, ThermalState};

fn main() -> collective_dephasing::Result<()> {
    let sd = SpectralDensity::from_coupling_combo(4.0, 0.12, 1.0, 1.0)?;
    let template = CloudGeometry::natural(1)?;
    let ns = [1_000, 10_000, 100_000];
    let ts: Vec<f64> = (0..=30).map(|i| 0.1 * 10f64.powf(i as f64 / 10.0)).collect();
    let spec = QuadratureSpec::default();
    let th = ThermalState::zero();

    let ghz = sweep_fisher(&sd, &template, &th, Mode::GhzCollective, &ts, &ns, &spec)?;
    let single = sweep_fisher(&sd, &template, &th, Mode::OneByOne, &ts, &ns, &spec)?;
    for (i, n) in ns.iter().enumerate() {
        let best = ghz[i].iter().find(|p| p.is_global_max).expect("one point is flagged");
        let one = single[i].last().expect("nonempty grid");
        println!(
            "N={n:<7} GHZ max F={:.4e} at t={:.3} (bound {:.3e}); one-by-one F(t_max)={:.4e}",
            best.fisher,
            best.t,
            cramer_rao_bound(best)?,
            one.fisher
        );
    }
    Ok(())
}
