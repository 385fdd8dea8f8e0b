//! Command-line front end for the `kratzer2d` binary.
//!
//! Settings resolve as flag > config file > built-in default. The config file
//! comes from `--config` or the `KRATZER2D_CONFIG` environment variable.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Result;
use crate::params::PotentialKind;
use config::{ConfigLayer, OutputFormat, RunConfig, CONFIG_ENV};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "kratzer2d", version, about = "Bound states of 2D Kratzer-type potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels for n <= n-max, |m| <= m-max with degeneracy classes.
    Spectrum(CommonArgs),
    /// Radial wavefunction samples for one (n, m).
    Wavefunction(CommonArgs),
    /// Probability density on a polar grid for one (n, m).
    Density(CommonArgs),
    /// Full self-check; exits 1 if any check fails.
    Verify(CommonArgs),
    /// Finite-difference eigenvalues with refinement and convergence order.
    Oracle(CommonArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// kratzer, mod1 or mod2.
    #[arg(long)]
    pub potential: Option<PotentialKind>,
    /// Well depth for kratzer and mod1.
    #[arg(long = "D0", alias = "d0", allow_hyphen_values = true)]
    pub d0: Option<f64>,
    /// Equilibrium radius.
    #[arg(long, allow_hyphen_values = true)]
    pub r0: Option<f64>,
    /// Coupling q for mod2.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    /// Repulsion parameter g for mod2.
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub hbar: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    /// Radial quantum number.
    #[arg(long)]
    pub n: Option<u32>,
    /// Angular quantum number.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i32>,
    #[arg(long)]
    pub n_max: Option<u32>,
    #[arg(long)]
    pub m_max: Option<u32>,
    /// csv or json.
    #[arg(long)]
    pub format: Option<OutputFormat>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Config file of `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Coarse finite-difference grid size.
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Finite-difference box radius or sampling radius.
    #[arg(long, allow_hyphen_values = true)]
    pub r_max: Option<f64>,
    /// Relative tolerance for oracle agreement.
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub nr: Option<usize>,
    #[arg(long)]
    pub nphi: Option<usize>,
    /// Adds a constant to every closed-form energy before checking it.
    #[arg(long, hide = true, allow_hyphen_values = true)]
    pub energy_offset: Option<f64>,
}

impl CommonArgs {
    fn layer(&self) -> ConfigLayer {
        ConfigLayer {
            potential: self.potential,
            d0: self.d0,
            r0: self.r0,
            q: self.q,
            g: self.g,
            hbar: self.hbar,
            mu: self.mu,
            n: self.n,
            m: self.m,
            n_max: self.n_max,
            m_max: self.m_max,
            format: self.format,
            out: self.out.clone(),
            grid_points: self.grid_points,
            r_max: self.r_max,
            tol: self.tol,
            nr: self.nr,
            nphi: self.nphi,
        }
    }

    /// Merges flags over the config file over defaults.
    pub fn resolve(&self) -> Result<RunConfig> {
        let path = self.config.clone().or_else(|| {
            std::env::var_os(CONFIG_ENV)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from)
        });
        let file = match path {
            Some(p) => ConfigLayer::from_file(&p)?,
            None => ConfigLayer::default(),
        };
        let mut cfg = RunConfig::resolve(self.layer().over(file))?;
        if let Some(offset) = self.energy_offset {
            if !offset.is_finite() {
                return Err(crate::error::invalid("energy offset must be finite"));
            }
            cfg.energy_offset = offset;
        }
        Ok(cfg)
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| crate::error::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth reporting
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            Ok(())
        }
    }
}

/// Executes a parsed command and returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    let result = (|| -> Result<i32> {
        match &cli.command {
            Command::Spectrum(a) => {
                let cfg = a.resolve()?;
                emit(&cfg, &commands::spectrum(&cfg)?)?;
            }
            Command::Wavefunction(a) => {
                let cfg = a.resolve()?;
                emit(&cfg, &commands::wavefunction(&cfg)?)?;
            }
            Command::Density(a) => {
                let cfg = a.resolve()?;
                emit(&cfg, &commands::density(&cfg)?)?;
            }
            Command::Oracle(a) => {
                let cfg = a.resolve()?;
                emit(&cfg, &commands::oracle(&cfg)?)?;
            }
            Command::Verify(a) => {
                let cfg = a.resolve()?;
                let report = verify::run_verify(&cfg)?;
                emit(&cfg, &report.render(cfg.format)?)?;
                if !report.all_passed() {
                    return Ok(EXIT_CHECK_FAILED);
                }
            }
        }
        Ok(EXIT_OK)
    })();
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("kratzer2d: error: {e}");
            EXIT_ERROR
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_OK
            }
        }
    }
}
