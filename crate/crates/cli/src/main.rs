use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hewalk_cli::commands::{cmd_figure, cmd_generate, cmd_sweep, write_sweep, SweepParam};
use hewalk_cli::config::ConfigArgs;

/// Split-step quantum walk simulator: generates hybrid-entangled
/// coin-lattice states and characterizes the conditional branches as
/// coherent states.
#[derive(Parser)]
#[command(name = "hewalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration and write the result record.
    Generate {
        #[command(flatten)]
        config: ConfigArgs,

        /// Also apply the symmetrizing displacement and record alpha_sym.
        #[arg(long)]
        symmetrize: bool,

        /// Write the JSON record here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,

        /// Write the per-site state table to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run one pipeline per swept value (concurrently; HEWALK_WORKERS
    /// caps the worker count).
    Sweep {
        #[command(flatten)]
        config: ConfigArgs,

        /// Which parameter the values apply to.
        #[arg(long, value_enum)]
        param: SweepParam,

        /// Comma-separated values, e.g. 4,6,8,10 or 20,30,40,50,60.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,

        /// Write the JSON rows here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit plot-ready CSV panels (fig2..fig7) plus a manifest.
    Figure {
        /// Figure id: fig2, fig3, fig4, fig5, fig6 or fig7.
        id: String,

        /// Output directory for the CSV panels and manifest.json.
        #[arg(long, default_value = "figures")]
        out_dir: PathBuf,
    },
}

fn run() -> Result<(), String> {
    match Cli::parse().command {
        Command::Generate {
            config,
            symmetrize,
            out,
            csv,
        } => {
            let cfg = config.resolve()?;
            cmd_generate(&cfg, config.window, symmetrize, out.as_deref(), csv.as_deref())?;
            Ok(())
        }
        Command::Sweep {
            config,
            param,
            values,
            out,
        } => {
            let cfg = config.resolve()?;
            let rows = cmd_sweep(&cfg, param, &values, config.window)?;
            write_sweep(&rows, out.as_deref())
        }
        Command::Figure { id, out_dir } => cmd_figure(&id, &out_dir),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
