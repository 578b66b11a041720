//! Conversion of arbitrary-precision rationals to `f64`.
//!
//! `Ratio::to_f64` is not usable here: the numerators and denominators of
//! layer probabilities overflow `f64` long before their quotient does, so the
//! naive numerator/denominator division turns into `inf / inf`. This routine
//! rescales by powers of two first and keeps ~80 significant bits, so the
//! result is accurate to well under an ulp whenever the quotient is
//! representable at all.

use num_bigint::Sign;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Extra bits carried through the integer division before rounding to `f64`.
const GUARD_BITS: i64 = 80;

/// Convert a big rational to the nearest (up to guard-bit truncation) `f64`.
///
/// Quotients beyond `f64` range saturate to `0.0` or `±inf`.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.numer().is_zero() {
        return 0.0;
    }
    let negative = r.numer().sign() == Sign::Minus;
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();

    // Shift so the integer quotient keeps GUARD_BITS significant bits.
    let shift = den.bits() as i64 - num.bits() as i64 + GUARD_BITS;
    let quotient = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let mut value = quotient
        .to_f64()
        .expect("quotient was scaled to ~80 bits and must fit f64");

    // Undo the scaling in bounded steps; each factor is a power of two, so
    // every multiplication is exact until overflow or underflow.
    let mut exp = -shift;
    while exp != 0 {
        let step = exp.clamp(-512, 512);
        value *= f64_exp2(step as i32);
        exp -= step;
        if value == 0.0 || value.is_infinite() {
            break;
        }
    }
    if negative {
        -value
    } else {
        value
    }
}

fn f64_exp2(e: i32) -> f64 {
    2f64.powi(e)
}
