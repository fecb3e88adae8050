//! Runs a scenario from config text and prints the CSV; writes files when given a directory.
//!
//! ```text
//! cargo run --example scenario_run -- /tmp/out
//! ```

use collective_dephasing::scenario::{execute, run_to_dir, ScenarioConfig};

const CONFIG: &str = "
name = small_sweep
computation = fisher_sweep
s = 4
coupling_combo = 0.12
n_list = 100, 1000
t_min = 1
t_max = 10
t_points_per_decade = 5
mode = ghz
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ScenarioConfig::parse(CONFIG)?;
    cfg.validate()?;
    print!("{}", execute(&cfg)?.to_csv()?);
    if let Some(dir) = std::env::args().nth(1) {
        for path in run_to_dir(&cfg, dir.as_ref())? {
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}
