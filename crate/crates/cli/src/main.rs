//! `cpsfwm`: run counter-propagating four-wave-mixing source computations
//! from a TOML config and write CSV/JSON data files plus a manifest.
//!
//! Exit codes: 0 success, 2 config error, 3 convergence failure,
//! 4 physics-domain error (unguided mode, unsupported configuration),
//! 1 I/O failure.

mod commands;
mod config;
mod figures;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cpsfwm_core::ErrorKind;

use crate::config::{Method, Settings};
use crate::figures::{FigureId, FigureOptions};
use crate::output::{Format, OutputDir};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] cpsfwm_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Config => 2,
                ErrorKind::Convergence => 3,
                ErrorKind::Physics => 4,
            },
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cpsfwm", version, about = "Counter-propagating SFWM photon-pair source toolkit")]
struct Cli {
    /// Experiment config (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, env = "CPSFWM_OUT_DIR", default_value = "cpsfwm-out")]
    out: PathBuf,
    /// Nodes per frequency axis (odd).
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Initial inner quadrature nodes.
    #[arg(long, global = true)]
    quad: Option<usize>,
    /// Reserved; every pipeline is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Format of tabular outputs.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// n_eff, k and k′ of one mode over a wavelength range.
    Dispersion,
    /// Joint spectral amplitude on a grid.
    Jsa {
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Schmidt decomposition and heralded purity, with a grid-doubling check.
    Purity {
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Pair rate versus fiber length, numeric and closed form.
    Brightness,
    /// Marginal FWHMs versus fiber length.
    Bandwidth,
    /// Intermodal phasematching offsets for each configured mode.
    Intermodal,
    /// Data sets behind a published figure or table.
    Figure {
        #[arg(value_enum)]
        id: FigureId,
    },
}

fn settings(cli: &Cli) -> Result<Settings, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("this command needs --config PATH".into()))?;
    Settings::load(path)?.with_overrides(cli.grid, cli.quad)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let _ = cli.seed;
    if let Command::Figure { id } = cli.command {
        let options = FigureOptions {
            grid: cli.grid.unwrap_or(129),
            quad: cli.quad.unwrap_or(129),
        };
        config::check_grid(options.grid)?;
        let name = format!("{id:?}").to_lowercase();
        let mut out = OutputDir::create(&cli.out.join(&name), cli.format)?;
        let hash = figures::run(id, options, &mut out)?;
        out.finish(&format!("figure {name}"), hash)?;
        return Ok(());
    }

    let settings = settings(cli)?;
    let mut out = OutputDir::create(&cli.out, cli.format)?;
    let name = match &cli.command {
        Command::Dispersion => {
            commands::dispersion(&settings, &mut out)?;
            "dispersion"
        }
        Command::Jsa { method } => {
            commands::jsa(&settings, method.unwrap_or(settings.method), &mut out)?;
            "jsa"
        }
        Command::Purity { method } => {
            commands::purity(&settings, method.unwrap_or(settings.method), &mut out)?;
            "purity"
        }
        Command::Brightness => {
            commands::brightness(&settings, &mut out)?;
            "brightness"
        }
        Command::Bandwidth => {
            commands::bandwidth(&settings, &mut out)?;
            "bandwidth"
        }
        Command::Intermodal => {
            commands::intermodal(&settings, &mut out)?;
            "intermodal"
        }
        Command::Figure { .. } => unreachable!("handled above"),
    };
    out.finish(name, settings.hash())?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cpsfwm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
