//! Flat key=value scenario files, figure presets and CSV output.
//!
//! ```text
//! # comments run to the end of the line
//! computation = gamma_curve
//! s = 4
//! coupling_combo = 0.12
//! theta = 0, 0.5, 1
//! n_list = 1000
//! ```
//!
//! A run writes `<name>.csv` and a `<name>.meta` sidecar holding every resolved
//! key; the sidecar is itself a valid config and reproduces the run.

mod config;
mod presets;
mod run;
mod table;

use std::path::{Path, PathBuf};

pub use config::{num, Computation, ScenarioConfig};
pub use presets::{preset, PRESETS};
pub use run::execute;
pub use table::{Cell, Table};

use crate::error::Error;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),

    #[error("{}", parse_message(*line, field, message))]
    Parse {
        line: usize,
        field: String,
        message: String,
    },

    #[error("invalid `{field}`: requires {requirement}")]
    Invalid {
        field: &'static str,
        requirement: String,
    },

    #[error(transparent)]
    Numerics(#[from] Error),

    #[error("non-finite value in column `{column}`, row {row}")]
    NonFinite { column: String, row: usize },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn parse_message(line: usize, field: &str, message: &str) -> String {
    if line == 0 {
        format!("config: `{field}`: {message}")
    } else {
        format!("config line {line}: `{field}`: {message}")
    }
}

impl RunError {
    /// Process exit status: 2 usage or parse, 3 domain, 4 numerical accuracy, 1 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) | RunError::Parse { .. } => 2,
            RunError::Invalid { .. } => 3,
            RunError::Numerics(e) if e.is_accuracy() => 4,
            RunError::Numerics(_) => 3,
            RunError::NonFinite { .. } => 4,
            RunError::Io { .. } => 1,
        }
    }
}

/// Command-line overrides applied on top of a config.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut ScenarioConfig) {
        if let Some(v) = self.rel_tol {
            cfg.rel_tol = v;
        }
        if let Some(v) = self.abs_tol {
            cfg.abs_tol = v;
        }
        if let Some(v) = self.threads {
            cfg.threads = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
    }
}

/// Validates, executes and writes `<out>/<name>.csv` and `<out>/<name>.meta`.
pub fn run_to_dir(cfg: &ScenarioConfig, out: &Path) -> Result<Vec<PathBuf>, RunError> {
    cfg.validate()?;
    let table = if cfg.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| RunError::Usage(format!("cannot start {} threads: {e}", cfg.threads)))?;
        pool.install(|| execute(cfg))?
    } else {
        execute(cfg)?
    };
    let csv = table.to_csv()?;
    let io = |path: &Path, e: std::io::Error| RunError::Io {
        path: path.display().to_string(),
        source: e,
    };
    std::fs::create_dir_all(out).map_err(|e| io(out, e))?;
    let csv_path = out.join(format!("{}.csv", cfg.name));
    let meta_path = out.join(format!("{}.meta", cfg.name));
    std::fs::write(&csv_path, csv).map_err(|e| io(&csv_path, e))?;
    std::fs::write(&meta_path, cfg.to_meta()).map_err(|e| io(&meta_path, e))?;
    Ok(vec![csv_path, meta_path])
}

/// Runs a named preset with overrides.
pub fn run_preset(name: &str, overrides: &Overrides, out: &Path) -> Result<Vec<PathBuf>, RunError> {
    let mut cfg = preset(name)?;
    overrides.apply(&mut cfg);
    run_to_dir(&cfg, out)
}

/// Runs a config file with overrides.
pub fn run_config(path: &Path, overrides: &Overrides, out: &Path) -> Result<Vec<PathBuf>, RunError> {
    let mut cfg = ScenarioConfig::from_file(path)?;
    overrides.apply(&mut cfg);
    run_to_dir(&cfg, out)
}
