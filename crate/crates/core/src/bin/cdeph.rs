use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use collective_dephasing::scenario::{run_config, run_preset, Overrides, PRESETS};

#[derive(Parser)]
#[command(name = "cdeph", version, about = "Collective dephasing and Ramsey phase-estimation runs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in figure preset.
    Preset {
        /// fig1, fig1_inset, fig2, fig3, fig4 or fig5
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run a key = value scenario file.
    Run {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Output directory for <name>.csv and <name>.meta.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    abs_tol: Option<f64>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            threads: self.threads,
            seed: self.seed,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Preset { name, common } => run_preset(name, &common.overrides(), &common.out),
        Command::Run { config, common } => run_config(config, &common.overrides(), &common.out),
    };
    match result {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("cdeph: {e}");
            if matches!(e, collective_dephasing::scenario::RunError::Usage(_)) {
                eprintln!("presets: {}", PRESETS.join(", "));
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
