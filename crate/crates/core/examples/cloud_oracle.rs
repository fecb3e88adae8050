//! Random Gaussian clouds: structure factor and exact dephasing against the continuum.

use collective_dephasing::cloud::{
    ensemble_mean_structure_factor, sample_positions, structure_factor_continuum, structure_factor_discrete_angular,
    CloudGeometry,
};
use collective_dephasing::dephasing::{gamma_collective, gamma_discrete_oracle, gamma_single_qubit};
use collective_dephasing::numerics::QuadratureSpec;
use collective_dephasing::reservoir::{SpectralDensity, ThermalState};

fn main() -> collective_dephasing::Result<()> {
    let n = 64;
    let seeds = 100;
    let g = CloudGeometry::natural(n)?;
    let sd = SpectralDensity::from_coupling_combo(4.0, 0.12, 1.0, 1.0)?;
    let th = ThermalState::zero();
    let spec = QuadratureSpec::new(1e-9, 0.0, 4000)?;
    let t = 0.5;

    let clouds: Vec<_> = (0..seeds).map(|seed| sample_positions(&g, seed)).collect();
    for k in [0.05, 0.1, 0.2, 0.4] {
        let mean = clouds
            .iter()
            .map(|p| structure_factor_discrete_angular(p, k))
            .sum::<collective_dephasing::Result<f64>>()?
            / seeds as f64;
        println!(
            "k={k:<5} <G> = {mean:>9.3}, ensemble mean {:>9.3}, coherent |G|^2 {:>9.3}",
            ensemble_mean_structure_factor(&g, k)?,
            structure_factor_continuum(&g, k)?.powi(2)
        );
    }

    let mut total = 0.0;
    for p in &clouds {
        total += gamma_discrete_oracle(&sd, p, &g, &th, t, &spec)?.full;
    }
    let cont = gamma_collective(&sd, &g, &th, t, &spec)?;
    let single = gamma_single_qubit(&sd, &th, t, &spec)?;
    let expected = (1.0 - 1.0 / n as f64) * cont + n as f64 * single;
    println!("t={t}: mean over {seeds} clouds {:.6e}, continuum + incoherent {expected:.6e}", total / seeds as f64);
    Ok(())
}
