//! `qcorr` command-line runner.
//!
//! Exit status: 0 success, 1 a check exceeded its tolerance, 2 invalid input
//! or I/O failure, 3 internal inconsistency.

mod conservation;
mod dqc1;
mod output;
mod state_info;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcorr::monogamy::ArrowConvention;
use qcorr::OptimizerConfig;

use output::{emit, CliError, Format, Outcome, EXIT_OK, EXIT_TOLERANCE};

#[derive(Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Quantum correlation measures and monogamy checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Base seed; sample i uses seed + i.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    optimizer: OptimizerArgs,
}

#[derive(Args, Clone)]
struct OptimizerArgs {
    /// Random starts per optimization (default depends on the measured dimension).
    #[arg(long)]
    restarts: Option<usize>,
    /// Simplex stopping tolerance, in bits.
    #[arg(long, default_value_t = 1e-8, value_parser = positive)]
    opt_tol: f64,
    /// Simplex iteration cap per start.
    #[arg(long, default_value_t = 2000)]
    max_iters: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Arrow {
    /// delta(X|Y) measures Y.
    MeasureSecond,
    /// delta(X|Y) measures X.
    MeasureFirst,
}

#[derive(Subcommand)]
enum Command {
    /// Ledger residuals and the conservation law on random three-qubit pure states.
    Conservation {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        /// Largest accepted |residual|, in bits.
        #[arg(long, default_value_t = 1e-4, value_parser = positive)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// One-clean-qubit trace readout and redistribution ledger.
    Dqc1 {
        #[command(flatten)]
        common: Common,
        /// Number of maximally mixed qubits (1 to 3; discords need n <= 2).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=3))]
        n: u64,
        /// Random unitaries to analyze; ignored with --unitary.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        /// JSON file with "kind": "unitary".
        #[arg(long)]
        unitary: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Strong-subadditivity balance along the alpha family.
    SsaSweep {
        #[command(flatten)]
        common: Common,
        /// Weight of the pure component.
        #[arg(long, default_value_t = 0.9)]
        lambda: f64,
        #[arg(long, default_value_t = 201)]
        alpha_steps: usize,
        #[arg(long, value_enum, default_value_t = Arrow::MeasureSecond)]
        arrow: Arrow,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Validate a state file and report its entropies and pairwise measures as JSON.
    StateInfo {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} is not a positive number"))
    }
}

impl Common {
    fn optimizer(&self) -> Result<OptimizerConfig, CliError> {
        let cfg = OptimizerConfig {
            restarts: self.optimizer.restarts,
            tol: self.optimizer.opt_tol,
            max_iters: self.optimizer.max_iters,
            seed: self.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn execute(command: &Command) -> Result<(Outcome, Option<PathBuf>), CliError> {
    match command {
        Command::Conservation {
            common,
            samples,
            tol,
            format,
        } => {
            let args = conservation::Args {
                samples: *samples,
                tol: *tol,
                seed: common.seed,
                optimizer: common.optimizer()?,
                format: *format,
            };
            Ok((conservation::run(&args)?, common.out.clone()))
        }
        Command::Dqc1 {
            common,
            n,
            samples,
            unitary,
            format,
        } => {
            let args = dqc1::Args {
                n: *n as usize,
                samples: *samples,
                seed: common.seed,
                unitary: unitary.clone(),
                optimizer: common.optimizer()?,
                format: *format,
            };
            Ok((dqc1::run(&args)?, common.out.clone()))
        }
        Command::SsaSweep {
            common,
            lambda,
            alpha_steps,
            arrow,
            format,
        } => {
            let args = sweep::Args {
                lambda: *lambda,
                alpha_steps: *alpha_steps,
                arrow: match arrow {
                    Arrow::MeasureSecond => ArrowConvention::MeasureSecond,
                    Arrow::MeasureFirst => ArrowConvention::MeasureFirst,
                },
                seed: common.seed,
                optimizer: common.optimizer()?,
                format: *format,
            };
            Ok((sweep::run(&args)?, common.out.clone()))
        }
        Command::StateInfo { file, common } => Ok((
            state_info::run(file, &common.optimizer()?)?,
            common.out.clone(),
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli.command).and_then(|(outcome, out)| {
        emit(out.as_deref(), &outcome.body)?;
        Ok(outcome.failure)
    });
    match result {
        Ok(None) => ExitCode::from(EXIT_OK),
        Ok(Some(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(EXIT_TOLERANCE)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
