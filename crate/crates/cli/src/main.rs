//! `mpcert`: simulate, validate and certify multiphoton Fourier interferometers.

mod commands;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "mpcert",
    version,
    about = "Multiphoton interference simulation and majorization certification"
)]
pub struct Cli {
    /// Seed for every stochastic step (Monte Carlo resampling, fit restarts).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Overrides the command's numerical tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Suppresses progress messages on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    /// Largest permanent size evaluated.
    #[arg(long, global = true, default_value_t = mpcert::optics::DEFAULT_PERMANENT_CAP)]
    pub permanent_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Writes the butterfly circuit realizing the 2^p-mode Fourier matrix.
    BuildQfft {
        /// Number of butterfly layers; the circuit has 2^p modes.
        #[arg(long, short)]
        p: u32,
        /// Output JSON path (stdout if omitted).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Computes the output distribution of a circuit for a photon input.
    Simulate {
        /// Circuit JSON.
        circuit: PathBuf,
        /// 1-based input modes, one per photon, e.g. `2,6` or `5,5`.
        #[arg(long, short, value_delimiter = ',', required = true)]
        input: Vec<usize>,
        /// Keep only the first s layers.
        #[arg(long)]
        partial: Option<usize>,
        /// Treat the photons as fully distinguishable.
        #[arg(long)]
        distinguishable: bool,
        /// Output CSV path (stdout if omitted).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Step-by-step majorization verdict over a sequence of distributions.
    Majorize {
        /// Distribution CSVs in sequence order (at least two).
        #[arg(required = true, num_args = 2..)]
        csv: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Direction::Auto)]
        direction: Direction,
        /// Monte Carlo resamples for Lorenz error bars (needs sigma columns).
        #[arg(long)]
        resamples: Option<usize>,
        /// Directory receiving one Lorenz CSV per input, `lorenz_<s>.csv`.
        #[arg(long)]
        lorenz_dir: Option<PathBuf>,
        /// Lorenz curve plot.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Verdict JSON path (stdout if omitted).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Suppression-law report for an n-photon distribution over m modes.
    Validate {
        csv: PathBuf,
        /// Photon number.
        #[arg(long, short)]
        n: usize,
        /// Mode count.
        #[arg(long, short)]
        m: usize,
        /// Suppressed mass at or below which the report passes.
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Fits a circuit template's parameters to measured distributions.
    Fit {
        /// Circuit JSON whose parameters are the starting point.
        template: PathBuf,
        /// Measurement set JSON.
        data: PathBuf,
        #[arg(long, default_value_t = 0)]
        restarts: usize,
        /// Half-width of the uniform restart perturbation.
        #[arg(long, default_value_t = 0.1)]
        restart_spread: f64,
        #[arg(long, default_value_t = 500)]
        max_iterations: usize,
        /// Reference circuit; adds the phase-fixed fidelity to the report.
        #[arg(long)]
        truth: Option<PathBuf>,
        /// Fitted circuit JSON path.
        #[arg(long, short)]
        out: PathBuf,
        /// Fit report JSON path (stdout if omitted).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Lorenz curve of a distribution, optionally with Monte Carlo sigmas.
    Lorenz {
        csv: PathBuf,
        #[arg(long)]
        resamples: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Direct,
    Reverse,
    Auto,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(commands::exit_code(&err))
        }
    }
}
