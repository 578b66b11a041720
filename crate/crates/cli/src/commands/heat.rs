//! `heat`: residual sweep comparing both derivative routes.
//!
//! Table rows take `P` from the finite-difference record, which is computed
//! on exact lattice values, and the residual columns from the digamma
//! record. Exit code 2 means the central relative residual failed to shrink
//! as the times grew.

use std::io::Write;

use pascube::{residual_sweep, DerivMethod, ResidualPair, ResidualReport};

use crate::args::{Format, HeatArgs};
use crate::commands::{usage, CliError, EXIT_CHECK_FAILED};
use crate::sink::Sink;

pub fn run(args: &HeatArgs, format: Format, sink: &mut Sink) -> Result<u8, CliError> {
    let report = residual_sweep(&args.times, args.window).map_err(usage)?;
    let decreasing = report.is_mode_residual_strictly_decreasing(DerivMethod::Digamma);
    match format {
        Format::Pretty => {
            table(&report, " ", sink)?;
            for summary in report.summaries() {
                writeln!(
                    sink,
                    "t={} fitted_D={} max_rel_residual={}",
                    summary.t, summary.fitted_d, summary.max_rel_residual
                )?;
            }
            writeln!(sink, "mode_residual_strictly_decreasing {decreasing}")?;
        }
        Format::Csv => {
            table(&report, ",", sink)?;
            for summary in report.summaries() {
                eprintln!(
                    "t={} fitted_D={} max_rel_residual={}",
                    summary.t, summary.fitted_d, summary.max_rel_residual
                );
            }
        }
        Format::Json => json(&report, decreasing, sink)?,
    }
    Ok(if decreasing { 0 } else { EXIT_CHECK_FAILED })
}

fn table(report: &ResidualReport, sep: &str, sink: &mut Sink) -> Result<(), CliError> {
    writeln!(
        sink,
        "t{sep}x_prime{sep}P{sep}dPdt_fd{sep}dPdt_dg{sep}d2Pdx2_fd{sep}d2Pdx2_dg{sep}residual{sep}relative_residual"
    )?;
    for pair in report.pairs() {
        let fd = &pair.fd;
        let dg = &pair.digamma;
        writeln!(
            sink,
            "{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}",
            fd.t,
            fd.x_prime,
            fd.p,
            fd.dpdt,
            dg.dpdt,
            fd.d2pdx2,
            dg.d2pdx2,
            dg.residual(),
            dg.relative_residual()
        )?;
    }
    Ok(())
}

fn json(report: &ResidualReport, decreasing: bool, sink: &mut Sink) -> Result<(), CliError> {
    let records: Vec<serde_json::Value> = report.pairs().iter().map(record_json).collect();
    let summaries: Vec<serde_json::Value> = report
        .summaries()
        .iter()
        .map(|summary| {
            serde_json::json!({
                "t": summary.t,
                "fitted_D": summary.fitted_d,
                "max_rel_residual": summary.max_rel_residual,
            })
        })
        .collect();
    let value = serde_json::json!({
        "x_window": report.x_window(),
        "records": records,
        "summaries": summaries,
        "residual_strictly_decreasing": decreasing,
    });
    writeln!(sink, "{value}")?;
    Ok(())
}

fn record_json(pair: &ResidualPair) -> serde_json::Value {
    let fd = &pair.fd;
    let dg = &pair.digamma;
    serde_json::json!({
        "t": fd.t,
        "x_prime": fd.x_prime,
        "P": fd.p,
        "dPdt_fd": fd.dpdt,
        "dPdt_dg": dg.dpdt,
        "d2Pdx2_fd": fd.d2pdx2,
        "d2Pdx2_dg": dg.d2pdx2,
        "residual": dg.residual(),
        "relative_residual": dg.relative_residual(),
    })
}
