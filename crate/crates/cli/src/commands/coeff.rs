//! `coeff`: evaluate one coefficient as a decimal string.

use std::io::Write;

use pascube::{ext_binom_closed, ext_binom_conv, ext_binom_rec, BigCount, CoeffIndex};

use crate::args::{CoeffArgs, Route};
use crate::commands::{usage, CliError, EXIT_CHECK_FAILED};
use crate::sink::Sink;

pub fn run(args: &CoeffArgs, sink: &mut Sink) -> Result<u8, CliError> {
    let idx = CoeffIndex::new(args.a, args.b, args.c);
    match args.route {
        Route::Rec => {
            writeln!(sink, "{}", ext_binom_rec(idx).map_err(usage)?)?;
            Ok(0)
        }
        Route::Closed => {
            writeln!(sink, "{}", ext_binom_closed(idx))?;
            Ok(0)
        }
        Route::Conv => {
            writeln!(sink, "{}", ext_binom_conv(idx).map_err(usage)?)?;
            Ok(0)
        }
        Route::All => {
            let mut values: Vec<BigCount> =
                vec![ext_binom_rec(idx).map_err(usage)?, ext_binom_closed(idx)];
            // The convolution route is undefined on the base layer, so a
            // c = 0 query compares the other two routes only.
            if idx.c >= 1 {
                values.push(ext_binom_conv(idx).map_err(usage)?);
            }
            for value in &values {
                writeln!(sink, "{value}")?;
            }
            let all_match = values.windows(2).all(|pair| pair[0] == pair[1]);
            writeln!(sink, "{}", if all_match { "match" } else { "mismatch" })?;
            Ok(if all_match { 0 } else { EXIT_CHECK_FAILED })
        }
    }
}
