use super::{RunError, ScenarioConfig};

const FIG1: &str = "\
name = fig1
computation = gamma_curve
s = 4
coupling_combo = 0.12
theta = 0, 0.5, 1
n_list = 1000
t_min = 0.01
t_max = 100
";

const FIG1_INSET: &str = "\
name = fig1_inset
computation = stationary_scan
s = 4
coupling_combo = 0.12
theta = 0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1, 1.2, 1.4, 1.6, 1.8, 2
n_list = 100, 1000
";

const FIG2: &str = "\
name = fig2
computation = fisher_sweep
s = 4
coupling_combo = 0.12
n_list = 1000, 10000, 100000, 1000000
t_min = 0.1
t_max = 100
";

const FIG3: &str = "\
name = fig3
computation = ratio_scan
s = 4, 2
coupling_combo = 0.12, 0.02
n_min = 10
n_max = 1000000
n_per_decade = 20
t_max = 100
best_time_rule = first_root
";

const FIG4: &str = "\
name = fig4
computation = fisher_sweep
s = 2
coupling_combo = 0.12
n_list = 1000, 10000, 100000, 1000000
t_min = 0.01
t_max = 3.5
";

const FIG5: &str = "\
name = fig5
computation = best_time_scan
s = 4
coupling_combo = 0.12
theta = 0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1
n_min = 100
n_max = 1000000
n_per_decade = 4
t_max = 20
best_time_rule = first_root
";

/// Preset names accepted by [`preset`].
pub const PRESETS: [&str; 6] = ["fig1", "fig1_inset", "fig2", "fig3", "fig4", "fig5"];

/// Config text of a preset.
pub fn preset_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "fig1" => FIG1,
        "fig1_inset" => FIG1_INSET,
        "fig2" => FIG2,
        "fig3" => FIG3,
        "fig4" => FIG4,
        "fig5" => FIG5,
        _ => return None,
    })
}

pub fn preset(name: &str) -> Result<ScenarioConfig, RunError> {
    let text = preset_text(name)
        .ok_or_else(|| RunError::Usage(format!("unknown preset `{name}` (one of {})", PRESETS.join(", "))))?;
    ScenarioConfig::parse(text)
}
