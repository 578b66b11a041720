//! `walk`: exact endpoint distribution, a seeded simulation, or both.
//!
//! Rows are ordered by the map key `(x, y)`, so output is byte-stable for a
//! fixed seed. CSV keeps stdout a pure table; the total-variation distance
//! for `--emit both` goes to stderr there.

use std::io::Write;

use pascube::ratio::ratio_to_f64;
use pascube::{
    exact_distribution, simulate, tv_distance, EmpiricalDistribution, ExactDistribution, WalkConfig,
};

use crate::args::{Emit, Format, WalkArgs};
use crate::commands::{usage, CliError};
use crate::sink::Sink;

pub fn run(args: &WalkArgs, format: Format, seed: u64, sink: &mut Sink) -> Result<u8, CliError> {
    let exact = exact_distribution(args.t);
    match args.emit {
        Emit::Exact => emit_exact(&exact, format, sink)?,
        Emit::Empirical => {
            let empirical = run_simulation(args, seed)?;
            emit_empirical(&empirical, seed, format, sink)?;
        }
        Emit::Both => {
            let empirical = run_simulation(args, seed)?;
            emit_both(&exact, &empirical, seed, format, sink)?;
        }
    }
    Ok(0)
}

fn run_simulation(args: &WalkArgs, seed: u64) -> Result<EmpiricalDistribution, CliError> {
    let config = WalkConfig {
        t: args.t,
        num_walks: args.num_walks,
        seed,
    };
    simulate(&config).map_err(usage)
}

fn emit_exact(exact: &ExactDistribution, format: Format, sink: &mut Sink) -> Result<(), CliError> {
    match format {
        Format::Pretty | Format::Csv => {
            let sep = if format == Format::Csv { "," } else { " " };
            writeln!(
                sink,
                "x{sep}y{sep}t{sep}numerator{sep}denominator{sep}float_value"
            )?;
            for (coord, mass) in exact.masses() {
                writeln!(
                    sink,
                    "{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}",
                    coord.x,
                    coord.y,
                    coord.t,
                    mass.numer(),
                    mass.denom(),
                    mass.to_f64()
                )?;
            }
            if format == Format::Pretty {
                writeln!(sink, "support {}", exact.support_len())?;
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = exact
                .masses()
                .iter()
                .map(|(coord, mass)| {
                    serde_json::json!({
                        "x": coord.x,
                        "y": coord.y,
                        "numerator": mass.numer().to_string(),
                        "denominator": mass.denom().to_string(),
                        "float_value": mass.to_f64(),
                    })
                })
                .collect();
            let value = serde_json::json!({
                "kind": "exact",
                "t": exact.t(),
                "support": exact.support_len(),
                "rows": rows,
            });
            writeln!(sink, "{value}")?;
        }
    }
    Ok(())
}

fn emit_empirical(
    empirical: &EmpiricalDistribution,
    seed: u64,
    format: Format,
    sink: &mut Sink,
) -> Result<(), CliError> {
    let n = empirical.num_walks();
    match format {
        Format::Pretty | Format::Csv => {
            let sep = if format == Format::Csv { "," } else { " " };
            writeln!(
                sink,
                "x{sep}y{sep}t{sep}numerator{sep}denominator{sep}float_value{sep}count{sep}N"
            )?;
            for (coord, count) in empirical.counts() {
                let freq = empirical.frequency(coord);
                writeln!(
                    sink,
                    "{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{count}{sep}{n}",
                    coord.x,
                    coord.y,
                    coord.t,
                    freq.numer(),
                    freq.denom(),
                    ratio_to_f64(&freq)
                )?;
            }
            if format == Format::Pretty {
                writeln!(sink, "support {}", empirical.counts().len())?;
                writeln!(sink, "num_walks {n}")?;
                writeln!(sink, "seed {seed}")?;
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = empirical
                .counts()
                .iter()
                .map(|(coord, count)| {
                    let freq = empirical.frequency(coord);
                    serde_json::json!({
                        "x": coord.x,
                        "y": coord.y,
                        "count": count,
                        "numerator": freq.numer().to_string(),
                        "denominator": freq.denom().to_string(),
                        "float_value": ratio_to_f64(&freq),
                    })
                })
                .collect();
            let value = serde_json::json!({
                "kind": "empirical",
                "t": empirical.t(),
                "num_walks": n,
                "seed": seed,
                "support": empirical.counts().len(),
                "rows": rows,
            });
            writeln!(sink, "{value}")?;
        }
    }
    Ok(())
}

/// Every realized endpoint carries positive exact mass, so the exact
/// support covers the empirical one and can index the merged rows.
fn emit_both(
    exact: &ExactDistribution,
    empirical: &EmpiricalDistribution,
    seed: u64,
    format: Format,
    sink: &mut Sink,
) -> Result<(), CliError> {
    let tv = tv_distance(empirical, exact).map_err(usage)?;
    let tv_float = ratio_to_f64(&tv);
    let n = empirical.num_walks();
    match format {
        Format::Pretty | Format::Csv => {
            let sep = if format == Format::Csv { "," } else { " " };
            writeln!(
                sink,
                "x{sep}y{sep}t{sep}numerator{sep}denominator{sep}float_value{sep}count{sep}N"
            )?;
            for (coord, mass) in exact.masses() {
                let count = empirical.count_at(coord);
                writeln!(
                    sink,
                    "{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{count}{sep}{n}",
                    coord.x,
                    coord.y,
                    coord.t,
                    mass.numer(),
                    mass.denom(),
                    mass.to_f64()
                )?;
            }
            if format == Format::Pretty {
                writeln!(sink, "num_walks {n}")?;
                writeln!(sink, "seed {seed}")?;
                writeln!(sink, "tv_distance {tv_float}")?;
            } else {
                eprintln!("tv_distance {tv_float}");
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = exact
                .masses()
                .iter()
                .map(|(coord, mass)| {
                    serde_json::json!({
                        "x": coord.x,
                        "y": coord.y,
                        "numerator": mass.numer().to_string(),
                        "denominator": mass.denom().to_string(),
                        "float_value": mass.to_f64(),
                        "count": empirical.count_at(coord),
                    })
                })
                .collect();
            let value = serde_json::json!({
                "kind": "both",
                "t": exact.t(),
                "num_walks": n,
                "seed": seed,
                "rows": rows,
                "tv_distance": tv_float,
                "tv_numerator": tv.numer().to_string(),
                "tv_denominator": tv.denom().to_string(),
            });
            writeln!(sink, "{value}")?;
        }
    }
    Ok(())
}
