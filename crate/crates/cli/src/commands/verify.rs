//! `verify`: sweep consistency suites and report `checked N, failed M`.
//!
//! Exit code 2 signals at least one failed check; bad bounds are usage
//! errors. Output is plain text regardless of `--format` since the result
//! is a single tally per suite.

use std::io::Write;

use pascube::{
    ext_binom_closed, ext_binom_conv, layer_sum, symmetry_pair, BigCount, CoeffIndex,
    RecurrenceTable,
};

use crate::args::{Suite, VerifyArgs};
use crate::commands::{usage, CliError, EXIT_CHECK_FAILED};
use crate::sink::Sink;

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    checked: u64,
    failed: u64,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failed += other.failed;
    }
}

pub fn run(args: &VerifyArgs, sink: &mut Sink) -> Result<u8, CliError> {
    let total = match args.suite {
        Suite::Routes => report_one(sink, "", routes(args)?)?,
        Suite::Symmetry => report_one(sink, "", symmetry(args)?)?,
        Suite::Layersum => report_one(sink, "", layersum(args)?)?,
        Suite::Convolution => report_one(sink, "", convolution(args)?)?,
        Suite::All => {
            let mut total = Tally::default();
            total.absorb(report_one(sink, "routes: ", routes(args)?)?);
            total.absorb(report_one(sink, "symmetry: ", symmetry(args)?)?);
            total.absorb(report_one(sink, "convolution: ", convolution(args)?)?);
            total.absorb(report_one(sink, "layersum: ", layersum(args)?)?);
            writeln!(
                sink,
                "total: checked {}, failed {}",
                total.checked, total.failed
            )?;
            total
        }
    };
    Ok(if total.failed == 0 {
        0
    } else {
        EXIT_CHECK_FAILED
    })
}

fn report_one(sink: &mut Sink, prefix: &str, tally: Tally) -> Result<Tally, CliError> {
    writeln!(
        sink,
        "{prefix}checked {}, failed {}",
        tally.checked, tally.failed
    )?;
    Ok(tally)
}

fn signed_bounds(args: &VerifyArgs) -> Result<(i64, i64), CliError> {
    let a_max = i64::try_from(args.a_max)
        .map_err(|_| CliError::Usage(format!("--a-max {} is out of range", args.a_max)))?;
    let c_max = i64::try_from(args.c_max)
        .map_err(|_| CliError::Usage(format!("--c-max {} is out of range", args.c_max)))?;
    Ok((a_max, c_max))
}

/// All evaluation routes agree on every coefficient in the sweep. The
/// convolution route is undefined on the base layer, so `c = 0` compares
/// the recurrence against the closed form only.
fn routes(args: &VerifyArgs) -> Result<Tally, CliError> {
    let (a_max, c_max) = signed_bounds(args)?;
    let mut table = RecurrenceTable::new();
    table.ensure(args.a_max, args.c_max).map_err(usage)?;
    let mut tally = Tally::default();
    for a in 0..=a_max {
        for b in 0..=a {
            for c in 0..=c_max {
                let idx = CoeffIndex::new(a, b, c);
                let rec = table.get(idx).map_err(usage)?;
                let closed = ext_binom_closed(idx);
                let ok = if c >= 1 {
                    let conv = ext_binom_conv(idx).map_err(usage)?;
                    rec == closed && conv == closed
                } else {
                    rec == closed
                };
                tally.record(ok);
            }
        }
    }
    Ok(tally)
}

/// Reflecting the subscript across the row midpoint preserves the value.
fn symmetry(args: &VerifyArgs) -> Result<Tally, CliError> {
    let (a_max, c_max) = signed_bounds(args)?;
    let mut tally = Tally::default();
    for a in 0..=a_max {
        for b in 0..=a {
            for c in 0..=c_max {
                let idx = CoeffIndex::new(a, b, c);
                let mirror = symmetry_pair(idx).map_err(usage)?;
                tally.record(ext_binom_closed(idx) == ext_binom_closed(mirror));
            }
        }
    }
    Ok(tally)
}

/// The one-step convolution against the layer below matches the closed form.
fn convolution(args: &VerifyArgs) -> Result<Tally, CliError> {
    let (a_max, c_max) = signed_bounds(args)?;
    let mut tally = Tally::default();
    for a in 0..=a_max {
        for b in 0..=a {
            for c in 1..=c_max {
                let idx = CoeffIndex::new(a, b, c);
                let conv = ext_binom_conv(idx).map_err(usage)?;
                tally.record(conv == ext_binom_closed(idx));
            }
        }
    }
    Ok(tally)
}

/// Layer `n` sums to `3^(n-1)`.
fn layersum(args: &VerifyArgs) -> Result<Tally, CliError> {
    let mut tally = Tally::default();
    let mut power = BigCount::from(1u32);
    for n in 1..=args.n_max {
        let sum = layer_sum(n).map_err(usage)?;
        tally.record(sum == power);
        power *= 3u32;
    }
    Ok(tally)
}
