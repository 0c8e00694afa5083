use std::io::Write;

use serde::Serialize;

use qfun::theorems::CheckPoint;
use qfun::{EvalResult, VerifyReport, ZeroResult};

use crate::claims::INPUT_PARAMS;
use crate::config::{Format, RunConfig};

pub const CSV_HEADER: [&str; 8] = ["claim_id", "q", "param_summary", "n_order", "x", "value", "margin", "passed"];

fn param_summary(report: &VerifyReport, pt: &CheckPoint) -> String {
    report
        .params
        .iter()
        .chain(pt.extra.iter())
        .map(|p| format!("{}={}", p.name, p.value))
        .collect::<Vec<_>>()
        .join(";")
}

/// The command line that re-evaluates exactly one check point.
pub fn rerun_command(report: &VerifyReport, pt: &CheckPoint, cfg: &RunConfig) -> String {
    let mut cmd = format!("qfun verify --claim {} --q {}", report.claim_id, report.q);
    for p in &report.params {
        if INPUT_PARAMS.contains(&p.name.as_str()) {
            cmd.push_str(&format!(" --{} {}", p.name, p.value));
        }
    }
    for e in &pt.extra {
        cmd.push_str(&format!(" --{} {}", e.name, e.value));
    }
    let indexed = matches!(
        report.claim_id,
        qfun::ClaimId::Ineq666 | qfun::ClaimId::RemarkHarmonic | qfun::ClaimId::PhiCoeff
    );
    if !indexed {
        cmd.push_str(&format!(" --x {}", pt.x));
    }
    if indexed || pt.n_order > 0 {
        cmd.push_str(&format!(" --orders {}..{}", pt.n_order, pt.n_order));
    }
    cmd.push_str(&format!(" --tol {} --rel-tol {}", cfg.tol, cfg.rel_tol));
    if cfg.allow_near_one {
        cmd.push_str(" --allow-near-one");
    }
    cmd
}

#[derive(Serialize)]
struct JsonReport<'a> {
    #[serde(flatten)]
    report: &'a VerifyReport,
    rerun_worst: String,
    rerun_counterexample: Option<String>,
}

pub fn write_reports<W: Write>(w: &mut W, reports: &[VerifyReport], cfg: &RunConfig) -> std::io::Result<()> {
    match cfg.format {
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(CSV_HEADER)?;
            for r in reports {
                out.write_record(csv_row(r, &r.worst, r.passed))?;
                if let Some(c) = &r.counterexample {
                    out.write_record(csv_row(r, c, false))?;
                }
            }
            out.flush()
        }
        Format::Json => {
            let items: Vec<JsonReport> = reports
                .iter()
                .map(|r| JsonReport {
                    report: r,
                    rerun_worst: rerun_command(r, &r.worst, cfg),
                    rerun_counterexample: r.counterexample.as_ref().map(|c| rerun_command(r, c, cfg)),
                })
                .collect();
            serde_json::to_writer_pretty(&mut *w, &items)?;
            writeln!(w)
        }
        Format::Text => {
            for r in reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                let expect = match r.consistent_with_claim() {
                    Some(true) => "as claimed",
                    Some(false) => "CONTRADICTS CLAIM",
                    None => "no claim",
                };
                writeln!(
                    w,
                    "{status} {} q={} [{}] worst margin {:e} at n={} x={} ({} checked, {} excluded; {expect}){}",
                    r.claim_id,
                    r.q,
                    param_summary(r, &r.worst),
                    r.worst_margin,
                    r.worst.n_order,
                    r.worst.x,
                    r.checked,
                    r.excluded,
                    if r.tight { " tight" } else { "" },
                )?;
                if let Some(c) = &r.counterexample {
                    writeln!(w, "  counterexample n={} x={} value={:e} margin={:e}", c.n_order, c.x, c.value, c.margin)?;
                    writeln!(w, "  rerun: {}", rerun_command(r, c, cfg))?;
                }
                for note in &r.notes {
                    writeln!(w, "  note: {note}")?;
                }
            }
            Ok(())
        }
    }
}

fn csv_row(r: &VerifyReport, pt: &CheckPoint, passed: bool) -> [String; 8] {
    [
        r.claim_id.to_string(),
        format!("{}", r.q),
        param_summary(r, pt),
        pt.n_order.to_string(),
        format!("{}", pt.x),
        format!("{:e}", pt.value),
        format!("{:e}", pt.margin),
        passed.to_string(),
    ]
}

#[derive(Debug, Serialize)]
pub struct EvalRow {
    pub function: String,
    pub q: f64,
    pub x: f64,
    pub value: f64,
    pub err_bound: f64,
    pub terms: usize,
}

impl EvalRow {
    pub fn new(function: String, q: f64, x: f64, r: EvalResult) -> Self {
        Self {
            function,
            q,
            x,
            value: r.value,
            err_bound: r.err_bound,
            terms: r.terms,
        }
    }
}

pub fn write_evals<W: Write>(w: &mut W, rows: &[EvalRow], format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(["fn", "q", "x", "value", "err_bound", "terms"])?;
            for r in rows {
                out.write_record([
                    r.function.clone(),
                    format!("{}", r.q),
                    format!("{}", r.x),
                    format!("{:e}", r.value),
                    format!("{:e}", r.err_bound),
                    r.terms.to_string(),
                ])?;
            }
            out.flush()
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, rows)?;
            writeln!(w)
        }
        Format::Text => {
            for r in rows {
                writeln!(
                    w,
                    "{} q={} x={}: {} (err <= {:e}, {} terms)",
                    r.function, r.q, r.x, r.value, r.err_bound, r.terms
                )?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ZeroRow {
    pub q: f64,
    #[serde(flatten)]
    pub zero: ZeroResult,
}

pub fn write_zeros<W: Write>(w: &mut W, rows: &[ZeroRow], format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(["q", "x0", "residual", "iterations", "bracket_lo", "bracket_hi"])?;
            for r in rows {
                out.write_record([
                    format!("{}", r.q),
                    format!("{}", r.zero.x0),
                    format!("{:e}", r.zero.residual),
                    r.zero.iterations.to_string(),
                    format!("{}", r.zero.bracket.0),
                    format!("{}", r.zero.bracket.1),
                ])?;
            }
            out.flush()
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, rows)?;
            writeln!(w)
        }
        Format::Text => {
            for r in rows {
                writeln!(
                    w,
                    "q={}: x0 = {} (|psi| = {:e}, {} iterations)",
                    r.q, r.zero.x0, r.zero.residual, r.zero.iterations
                )?;
            }
            Ok(())
        }
    }
}
