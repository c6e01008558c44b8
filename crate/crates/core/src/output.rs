//! Deterministic number formatting shared by JSON and CSV output.

use num_bigint::BigUint;
use serde::Serializer;

/// Significant digits kept for every floating-point value we emit.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits. Non-finite values
/// pass through unchanged.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("scientific notation parses")
}

/// CSV / text rendering: shortest representation of the rounded value,
/// `NA` for missing or non-finite.
pub fn format_float(x: Option<f64>) -> String {
    match x {
        Some(v) if v.is_finite() => format!("{}", round_sig(v)),
        _ => "NA".to_string(),
    }
}

pub fn serialize_rounded<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(round_sig(*x))
    } else {
        s.serialize_none()
    }
}

pub fn serialize_rounded_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_rounded(v, s),
        None => s.serialize_none(),
    }
}

/// Big integers are written as decimal strings so they stay exact.
pub fn serialize_biguint<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_str_radix(10))
}

/// Natural logarithm of an arbitrary-precision integer, from its top 64
/// bits plus the bit length. Returns `-inf` for zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        let digits = x.to_u64_digits();
        return (digits[0] as f64).ln();
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    (top.to_u64_digits()[0] as f64).ln() + shift as f64 * std::f64::consts::LN_2
}
