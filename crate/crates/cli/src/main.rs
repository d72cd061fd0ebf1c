//! `oscper`: periods of conservative nonlinear oscillators from the command
//! line.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numerical
//! failure.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;
mod params;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::MethodArg;
use output::{Format, Record};
use params::ModelArg;

#[derive(Parser)]
#[command(
    name = "oscper",
    version,
    about = "Periods of conservative nonlinear oscillators u'' + f(u) = 0"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelOpts {
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Nonlinearity strength (default 1)
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// Linear frequency of the quadratic-abs model
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    omega0: f64,
}

#[derive(Args)]
struct StateOpts {
    /// Initial displacement A (u'(0) = 0)
    #[arg(long, allow_negative_numbers = true)]
    amplitude: Option<f64>,
    /// Reduced parameter: eps A^2 (duffing) or eps A (quadratic-abs)
    #[arg(long, allow_negative_numbers = true)]
    rho: Option<f64>,
}

#[derive(Args)]
struct OutputOpts {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Period of one oscillator by one method
    Period {
        #[command(flatten)]
        model: ModelOpts,
        #[command(flatten)]
        state: StateOpts,
        #[arg(long, value_enum, default_value_t = MethodArg::First)]
        method: MethodArg,
        /// Solver tolerance (method-specific default)
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// First-order, second-order and exact periods over a rho grid
    Sweep {
        #[command(flatten)]
        model: ModelOpts,
        /// lo:hi:npoints or lo:hi:npoints:log
        #[arg(long)]
        grid: String,
        /// Quarter-period residual tolerance of the trial solvers
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Strong-coupling constants lim sqrt(rho) T(rho), two routes each
    Limit {
        #[arg(long, value_enum)]
        model: ModelArg,
        /// Quadrature tolerance of the exact route
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Trial, improved and integrated trajectories on a uniform time grid
    Trajectory {
        #[command(flatten)]
        model: ModelOpts,
        #[command(flatten)]
        state: StateOpts,
        /// Trial order: first or second
        #[arg(long, value_enum, default_value_t = MethodArg::First)]
        method: MethodArg,
        /// End time (default: one trial period)
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Run every acceptance check
    Validate {
        /// Machine-readable report instead of PASS/FAIL lines
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Usage(String),
    Numeric(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Validation(m) | Failure::Usage(m) | Failure::Numeric(m) => f.write_str(m),
        }
    }
}

fn check_tol(tol: Option<f64>) -> Result<(), Failure> {
    match tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => Err(Failure::Usage(format!(
            "tolerance must be positive, got {t}"
        ))),
        _ => Ok(()),
    }
}

fn write(text: String, path: Option<&PathBuf>) -> Result<(), Failure> {
    output::emit(&text, path.map(|p| p.as_path())).map_err(|e| match path {
        Some(p) => Failure::Usage(format!("cannot write {}: {e}", p.display())),
        None => Failure::Numeric(format!("cannot write output: {e}")),
    })
}

fn write_records(records: &[Record], out: &OutputOpts) -> Result<(), Failure> {
    let text = output::render(records, out.format).map_err(|e| Failure::Numeric(e.to_string()))?;
    write(text, out.output.as_ref())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Period {
            model,
            state,
            method,
            tol,
            out,
        } => {
            check_tol(tol)?;
            let setup = params::resolve(
                model.model,
                model.epsilon,
                model.omega0,
                state.amplitude,
                state.rho,
            )?;
            write_records(&commands::cmd_period(&setup, method, tol)?, &out)
        }
        Command::Sweep {
            model,
            grid,
            tol,
            out,
        } => {
            check_tol(tol)?;
            let grid = params::parse_grid(&grid).map_err(Failure::Usage)?;
            let rows = commands::cmd_sweep(model.model, model.epsilon, model.omega0, &grid, tol)?;
            let text = output::render_with_header(&commands::SWEEP_HEADER, &rows, out.format)
                .map_err(|e| Failure::Numeric(e.to_string()))?;
            write(text, out.output.as_ref())
        }
        Command::Limit { model, tol, out } => {
            check_tol(tol)?;
            let (records, consistent) = commands::cmd_limit(model, tol)?;
            write_records(&records, &out)?;
            if consistent {
                Ok(())
            } else {
                Err(Failure::Numeric(format!(
                    "analytic and large-rho limits differ by more than {:e}",
                    commands::LIMIT_CONSISTENCY
                )))
            }
        }
        Command::Trajectory {
            model,
            state,
            method,
            t_end,
            samples,
            tol,
            out,
        } => {
            check_tol(tol)?;
            let setup = params::resolve(
                model.model,
                model.epsilon,
                model.omega0,
                state.amplitude,
                state.rho,
            )?;
            let records = commands::cmd_trajectory(&setup, method, t_end, samples, tol)?;
            write_records(&records, &out)
        }
        Command::Validate { format, output } => {
            let reports = commands::cmd_validate();
            let text = match format {
                None => reports.iter().map(|r| format!("{r}\n")).collect(),
                Some(f) => {
                    let records: Vec<Record> =
                        reports.iter().map(commands::criterion_record).collect();
                    output::render(&records, f).map_err(|e| Failure::Numeric(e.to_string()))?
                }
            };
            write(text, output.as_ref())?;
            let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Validation(format!(
                    "failed criteria: {}",
                    failed.join(", ")
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("oscper: {f}");
            ExitCode::from(f.code())
        }
    }
}
