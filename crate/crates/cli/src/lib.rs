//! Front end for qfun: evaluation, zero location and claim verification
//! with text, CSV or JSON reports.

pub mod claims;
pub mod config;
pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use qfun::qcore::{ln_q_gamma, psi_order, q_gamma};
use qfun::qderiv::make_grid;
use qfun::qroots::{digamma_zero_with, DEFAULT_ROOT_TOL};
use qfun::{QError, VerifyReport};

pub use config::{Cli, Command, Flags, Format, Function, RunConfig};

use claims::{q_param, truncation, SWEEP_Q};
use config::{parse_config_file, ConfigError, CONFIG_ENV};
use output::{write_evals, write_reports, write_zeros, EvalRow, ZeroRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Eval(QError),
    Io(io::Error),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "config: {e}"),
            RunError::Eval(e) => write!(f, "evaluation: {e}"),
            RunError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<QError> for RunError {
    fn from(e: QError) -> Self {
        RunError::Eval(e)
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Io(e)
    }
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

/// Merges the file named by QFUN_CONFIG (if set) under the command-line flags.
pub fn resolve(cli: Cli) -> Result<RunConfig, RunError> {
    let mut flags = cli.flags;
    if let Ok(path) = std::env::var(CONFIG_ENV) {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| ConfigError(format!("cannot read {CONFIG_ENV}={path}: {e}")))?;
        flags.merge_file(&parse_config_file(&text)?)?;
    }
    Ok(RunConfig::from_flags(cli.command, flags)?)
}

/// Runs the verify plan and returns the reports in claim-then-q order.
pub fn collect_reports(cfg: &RunConfig) -> Result<Vec<VerifyReport>, RunError> {
    claims::plan(cfg)?
        .into_iter()
        .map(|(claim, q)| claims::run_claim(claim, q, cfg).map_err(RunError::from))
        .collect()
}

fn function_label(cfg: &RunConfig) -> String {
    match cfg.function {
        Function::Gamma => "gamma".into(),
        Function::LnGamma => "ln-gamma".into(),
        Function::Digamma => "digamma".into(),
        Function::Polygamma => format!("polygamma{}", polygamma_order(cfg)),
    }
}

fn polygamma_order(cfg: &RunConfig) -> usize {
    cfg.orders.map(|o| o.hi).or(cfg.n_max).unwrap_or(1)
}

fn evaluate(cfg: &RunConfig, xs: &[f64]) -> Result<Vec<EvalRow>, RunError> {
    let qs = if cfg.qs.is_empty() { SWEEP_Q.to_vec() } else { cfg.qs.clone() };
    let t = truncation(cfg)?;
    let mut rows = Vec::new();
    for q in qs {
        let p = q_param(cfg, q)?;
        for &x in xs {
            let r = match cfg.function {
                Function::Gamma => q_gamma(&p, x, &t)?,
                Function::LnGamma => ln_q_gamma(&p, x, &t)?,
                Function::Digamma => psi_order(0, &p, x, &t)?,
                Function::Polygamma => psi_order(polygamma_order(cfg), &p, x, &t)?,
            };
            rows.push(EvalRow::new(function_label(cfg), q, x, r));
        }
    }
    Ok(rows)
}

fn execute<W: Write>(cfg: &RunConfig, w: &mut W) -> Result<i32, RunError> {
    match cfg.command {
        Command::Eval | Command::Scan => {
            let xs = match cfg.x {
                Some(x) => vec![x],
                None => make_grid(cfg.x_min, cfg.x_max, cfg.points, cfg.spacing)?,
            };
            write_evals(w, &evaluate(cfg, &xs)?, cfg.format)?;
            Ok(EXIT_OK)
        }
        Command::Zero => {
            let qs = if cfg.qs.is_empty() { SWEEP_Q.to_vec() } else { cfg.qs.clone() };
            let t = truncation(cfg)?;
            let rows = qs
                .into_iter()
                .map(|q| {
                    let p = q_param(cfg, q)?;
                    Ok(ZeroRow {
                        q,
                        zero: digamma_zero_with(&p, DEFAULT_ROOT_TOL, &t)?,
                    })
                })
                .collect::<Result<Vec<_>, QError>>()?;
            write_zeros(w, &rows, cfg.format)?;
            Ok(EXIT_OK)
        }
        Command::Verify | Command::All => {
            let reports = collect_reports(cfg)?;
            write_reports(w, &reports, cfg)?;
            Ok(if reports.iter().all(|r| r.passed) {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            })
        }
    }
}

/// Executes `cfg`, writing to --out or `stdout`; returns the exit code.
pub fn run<W: Write>(cfg: &RunConfig, stdout: &mut W) -> Result<i32, RunError> {
    match &cfg.out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            let code = execute(cfg, &mut f)?;
            f.flush()?;
            Ok(code)
        }
        None => execute(cfg, stdout),
    }
}
