//! Exact rationals: text form `p` or `p/q`, never decimals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serializer;

pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn one() -> Rational {
    Rational::one()
}

/// `p/q` in lowest terms, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p` or `p/q` (decimal digits, optional leading `-` on `p`).
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (text, None),
    };
    let digits = |s: &str, allow_sign: bool| {
        let body = if allow_sign { s.strip_prefix('-').unwrap_or(s) } else { s };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(p, true) {
        return Err(format!("`{text}` is not a rational of the form p or p/q"));
    }
    let numer: BigInt = p.parse().map_err(|_| format!("invalid numerator `{p}`"))?;
    let denom: BigInt = match q {
        None => BigInt::one(),
        Some(q) if digits(q, false) => q.parse().map_err(|_| format!("invalid denominator `{q}`"))?,
        Some(q) => return Err(format!("invalid denominator `{q}`")),
    };
    if denom.is_zero() {
        return Err(format!("zero denominator in `{text}`"));
    }
    Ok(Rational::new(numer, denom))
}

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub(crate) fn ser_rationals<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(format_rational))
}

pub(crate) fn ser_rational_grid<S: Serializer>(grid: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(grid.iter().map(|row| row.iter().map(format_rational).collect::<Vec<_>>()))
}
