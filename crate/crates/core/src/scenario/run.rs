use rayon::prelude::*;

use super::config::{Computation, ScenarioConfig};
use super::table::{Cell, Table};
use super::RunError;
use crate::cloud::{sample_positions, CloudGeometry};
use crate::dephasing::{gamma_discrete_oracle, DephasingKernel};
use crate::metrology::{
    best_time_with, classify_threshold, BestTimeRule, fisher_optimal, sweep_fisher, t_best_zeno, Dimension, Mode,
    TemperatureClass,
};
use crate::numerics::QuadratureSpec;
use crate::reservoir::{SpectralDensity, ThermalState};
use crate::Result;

/// Runs the computation named in `cfg`. Rows come out in a fixed order
/// regardless of how many threads evaluate them.
pub fn execute(cfg: &ScenarioConfig) -> std::result::Result<Table, RunError> {
    cfg.validate()?;
    let spec = cfg.quadrature()?;
    let table = match cfg.computation {
        Computation::GammaCurve => gamma_curve(cfg, &spec)?,
        Computation::FisherSweep => fisher_sweep(cfg, &spec)?,
        Computation::RatioScan => ratio_scan(cfg, &spec)?,
        Computation::BestTimeScan => best_time_scan(cfg, &spec)?,
        Computation::StationaryScan => stationary_scan(cfg, &spec)?,
        Computation::Threshold => threshold(cfg)?,
        Computation::OracleComparison => oracle_comparison(cfg, &spec)?,
    };
    table.check_finite()?;
    Ok(table)
}

fn density(cfg: &ScenarioConfig, i: usize) -> Result<SpectralDensity> {
    SpectralDensity::from_coupling_combo(cfg.s[i], cfg.coupling_for(i), 1.0, cfg.w_s_over_wbar)
}

fn cloud(n: usize) -> Result<CloudGeometry> {
    CloudGeometry::natural(n)
}

fn label(x: f64) -> String {
    format!("{x}")
}

fn gamma_curve(cfg: &ScenarioConfig, spec: &QuadratureSpec) -> Result<Table> {
    let sd = density(cfg, 0)?;
    let ts = cfg.time_grid();
    let single_n = cfg.n_list.len() == 1;
    let mut header = vec!["w_t".to_string()];
    let mut kernels = Vec::new();
    for &n in &cfg.n_list {
        for &theta in &cfg.theta {
            header.push(if single_n {
                format!("gamma_T{}", label(theta))
            } else {
                format!("gamma_N{n}_T{}", label(theta))
            });
            kernels.push(DephasingKernel::collective(&sd, &cloud(n)?, &ThermalState::new(theta)?));
        }
    }
    let rows = ts
        .par_iter()
        .map(|&t| {
            let mut row = vec![Cell::Num(t)];
            for k in &kernels {
                row.push(Cell::Num(k.gamma(t, spec)?));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(header);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table)
}

fn fisher_sweep(cfg: &ScenarioConfig, spec: &QuadratureSpec) -> Result<Table> {
    let sd = density(cfg, 0)?;
    let th = ThermalState::new(cfg.theta[0])?;
    let ts = cfg.time_grid();
    let mut ns = cfg.n_list.clone();
    ns.sort_unstable();
    ns.dedup();
    let template = cloud(1)?;
    let single = sweep_fisher(&sd, &template, &th, Mode::OneByOne, &ts, &ns, spec)?;
    let ghz = sweep_fisher(&sd, &template, &th, Mode::GhzCollective, &ts, &ns, spec)?;
    let mut header = vec!["w_t".to_string()];
    for n in &ns {
        header.push(format!("F1_N{n}"));
        header.push(format!("FN_N{n}"));
    }
    let mut table = Table::new(header);
    for (j, &t) in ts.iter().enumerate() {
        let mut row = vec![Cell::Num(t)];
        for i in 0..ns.len() {
            row.push(Cell::Num(single[i][j].fisher));
            row.push(Cell::Num(ghz[i][j].fisher));
        }
        table.push(row);
    }
    Ok(table)
}

/// The ratio always uses the global maximum of F_N; `best_time_rule` only
/// selects the reported `t_best_numeric`.
fn ratio_scan(cfg: &ScenarioConfig, spec: &QuadratureSpec) -> Result<Table> {
    let th = ThermalState::new(cfg.theta[0])?;
    let densities = (0..cfg.s.len()).map(|i| density(cfg, i)).collect::<Result<Vec<_>>>()?;
    let mut header = vec!["N".to_string()];
    header.extend(cfg.s.iter().map(|&s| format!("ratio_s{}", label(s))));
    header.push("t_best_numeric".to_string());
    header.push("t_best_zeno".to_string());
    let rows = cfg
        .n_list
        .par_iter()
        .map(|&n| {
            let g = cloud(n)?;
            let mut row = vec![Cell::Int(n as u64)];
            let mut first_best = None;
            for sd in &densities {
                let best = best_time_with(sd, &g, &th, Mode::GhzCollective, cfg.t_max, BestTimeRule::GlobalMax, spec)?;
                let one = fisher_optimal(sd, &g, &th, cfg.t_max, Mode::OneByOne, spec)?;
                row.push(Cell::Num(best.fisher / one.fisher));
                first_best.get_or_insert(best.t);
            }
            let t_best = match cfg.best_time_rule {
                BestTimeRule::GlobalMax => first_best.expect("at least one s"),
                rule => best_time_with(&densities[0], &g, &th, Mode::GhzCollective, cfg.t_max, rule, spec)?.t,
            };
            row.push(Cell::Num(t_best));
            row.push(Cell::Num(t_best_zeno(&densities[0], &g, &th)?));
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(header);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table)
}

fn best_time_scan(cfg: &ScenarioConfig, spec: &QuadratureSpec) -> Result<Table> {
    let sd = density(cfg, 0)?;
    let ghz = cfg.mode == Mode::GhzCollective;
    let mut header: Vec<String> = ["theta", "N", "log10_N", "t_best", "fisher", "gamma"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    if ghz {
        header.push("t_best_zeno".to_string());
    }
    let cells: Vec<(f64, usize)> = cfg
        .theta
        .iter()
        .flat_map(|&th| cfg.n_list.iter().map(move |&n| (th, n)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(theta, n)| {
            let g = cloud(n)?;
            let th = ThermalState::new(theta)?;
            let p = best_time_with(&sd, &g, &th, cfg.mode, cfg.t_max, cfg.best_time_rule, spec)?;
            let mut row = vec![
                Cell::Num(theta),
                Cell::Int(n as u64),
                Cell::Num((n as f64).log10()),
                Cell::Num(p.t),
                Cell::Num(p.fisher),
                Cell::Num(p.gamma),
            ];
            if ghz {
                row.push(Cell::Num(t_best_zeno(&sd, &g, &th)?));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(header);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table)
}

fn stationary_scan(cfg: &ScenarioConfig, spec: &QuadratureSpec) -> Result<Table> {
    let sd = density(cfg, 0)?;
    let mut header = vec!["theta".to_string()];
    header.extend(cfg.n_list.iter().map(|n| format!("gamma_inf_N{n}")));
    let rows = cfg
        .theta
        .par_iter()
        .map(|&theta| {
            let th = ThermalState::new(theta)?;
            let mut row = vec![Cell::Num(theta)];
            for &n in &cfg.n_list {
                let g = cloud(n)?;
                row.push(Cell::Num(crate::dephasing::gamma_stationary_quadrature(&sd, &g, &th, spec)?));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(header);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table)
}

fn threshold(cfg: &ScenarioConfig) -> Result<Table> {
    let header = ["s", "dimension", "temperature", "all_time", "zeno"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut table = Table::new(header);
    let mut classes = Vec::new();
    for &theta in &cfg.theta {
        let c = if theta == 0.0 {
            TemperatureClass::Zero
        } else {
            TemperatureClass::Finite
        };
        if !classes.contains(&c) {
            classes.push(c);
        }
    }
    for &s in &cfg.s {
        for &c in &classes {
            let r = classify_threshold(s, cfg.dimension, c)?;
            table.push(vec![
                Cell::Num(s),
                Cell::Text(
                    match r.dimension {
                        Dimension::One => "1D",
                        Dimension::Three => "3D",
                    }
                    .into(),
                ),
                Cell::Text(
                    match c {
                        TemperatureClass::Zero => "zero",
                        TemperatureClass::Finite => "finite",
                    }
                    .into(),
                ),
                Cell::Bool(r.all_time_suppression),
                Cell::Bool(r.zeno_suppression),
            ]);
        }
    }
    Ok(table)
}

fn oracle_comparison(cfg: &ScenarioConfig, spec: &QuadratureSpec) -> Result<Table> {
    let sd = density(cfg, 0)?;
    let th = ThermalState::new(cfg.theta[0])?;
    let n = cfg.n_list[0];
    let g = cloud(n)?;
    let ts = cfg.time_grid();
    let collective = DephasingKernel::collective(&sd, &g, &th);
    let single = DephasingKernel::single_qubit(&sd, &th);
    let per_seed = (0..cfg.seeds as u64)
        .into_par_iter()
        .map(|i| {
            let p = sample_positions(&g, cfg.seed.wrapping_add(i));
            ts.iter()
                .map(|&t| gamma_discrete_oracle(&sd, &p, &g, &th, t, spec))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let header = [
        "w_t",
        "gamma_continuum",
        "gamma_expected",
        "gamma_oracle_mean",
        "gamma_oracle_stderr",
        "coherent_mean",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let mut table = Table::new(header);
    let m = per_seed.len() as f64;
    let nf = n as f64;
    for (j, &t) in ts.iter().enumerate() {
        let cont = collective.gamma(t, spec)?;
        let expected = (1.0 - 1.0 / nf) * cont + nf * single.gamma(t, spec)?;
        let mean = per_seed.iter().map(|r| r[j].full).sum::<f64>() / m;
        let var = if per_seed.len() > 1 {
            per_seed.iter().map(|r| (r[j].full - mean).powi(2)).sum::<f64>() / (m - 1.0)
        } else {
            0.0
        };
        let coherent = per_seed.iter().map(|r| r[j].coherent).sum::<f64>() / m;
        table.push(vec![
            Cell::Num(t),
            Cell::Num(cont),
            Cell::Num(expected),
            Cell::Num(mean),
            Cell::Num((var / m).sqrt()),
            Cell::Num(coherent),
        ]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_report_for_s6() {
        let c = ScenarioConfig::parse("computation = threshold\ns = 6\n").unwrap();
        let t = execute(&c).unwrap();
        assert_eq!(t.to_csv().unwrap(), "s,dimension,temperature,all_time,zeno\n6.0,3D,zero,true,true\n");
    }

    #[test]
    fn zero_coupling_gives_zero_gamma() {
        let c = ScenarioConfig::parse(
            "computation = gamma_curve\ns = 4\ncoupling_combo = 0\nt_min = 0.1\nt_max = 10\nt_points_per_decade = 5\n",
        )
        .unwrap();
        let t = execute(&c).unwrap();
        assert_eq!(t.header, vec!["w_t", "gamma_T0"]);
        assert!(t.numbers("gamma_T0").unwrap().iter().all(|&g| g == 0.0));
        assert_eq!(t.rows.len(), 11);
    }

    #[test]
    fn gamma_curve_columns_per_temperature() {
        let c = ScenarioConfig::parse(
            "computation = gamma_curve\ns = 4\ntheta = 0, 0.5, 1\nt_min = 1\nt_max = 10\nt_points_per_decade = 3\n",
        )
        .unwrap();
        let t = execute(&c).unwrap();
        assert_eq!(t.header, vec!["w_t", "gamma_T0", "gamma_T0.5", "gamma_T1"]);
        for row in &t.rows {
            let v: Vec<f64> = row[1..]
                .iter()
                .map(|c| match c {
                    Cell::Num(x) => *x,
                    _ => unreachable!(),
                })
                .collect();
            assert!(v[0] <= v[1] && v[1] <= v[2]);
        }
    }
}
