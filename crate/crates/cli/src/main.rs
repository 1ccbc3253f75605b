mod commands;
mod config;
mod error;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::info;

use config::{Format, JobConfig};
use error::CliError;

#[derive(Parser)]
#[command(name = "stripq", version, about = "Exact q-series tools for strip geometries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Job configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Override the X-order N.
    #[arg(long, global = true)]
    x_order: Option<usize>,
    /// Override the t-order.
    #[arg(long, global = true)]
    t_order: Option<i64>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Json,
    Tsv,
}

#[derive(Subcommand, Clone, Copy, Debug)]
enum Command {
    /// Closed-form wave function and its annihilation check.
    Solve,
    /// Symmetric-quiver form, matrix and lattice-sum check.
    Quiver,
    /// Euler-product exponents of the wave function.
    Dt,
    /// q-Barnes integrand, shift identity and residue sum.
    Barnes,
    /// Mirror curve, its parametrization and saddle points.
    Classical,
    /// Run every invariant that applies to the configuration.
    Verify,
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config PATH is required".into()))?;
    let mut cfg = JobConfig::load(path)?;
    if let Some(n) = cli.x_order {
        cfg.x_order = n;
    }
    if let Some(t) = cli.t_order {
        cfg.t_order = t;
    }
    cfg.check_orders()?;
    if let Some(f) = cli.format {
        cfg.format = match f {
            FormatArg::Json => Format::Json,
            FormatArg::Tsv => Format::Tsv,
        };
    }
    info!("{:?} on {} at basepoint {}", cli.command, cfg.geometry.label(), cfg.basepoint);
    let (report, ok) = match cli.command {
        Command::Solve => (commands::solve(&cfg)?, true),
        Command::Quiver => (commands::quiver(&cfg)?, true),
        Command::Dt => (commands::dt(&cfg)?, true),
        Command::Barnes => (commands::barnes(&cfg)?, true),
        Command::Classical => (commands::classical(&cfg)?, true),
        Command::Verify => commands::verify(&cfg)?,
    };
    let text = render::render(&report, cfg.format);
    match &cli.out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(ok)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("stripq: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("stripq: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
