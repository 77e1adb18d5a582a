//! Arbitrary-precision rationals.
//!
//! `num_rational::BigRational` already keeps numerator and denominator
//! coprime with a positive denominator, so it is used directly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// `num / den` as a reduced rational. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (optional sign on `p`, surrounding whitespace ignored).
pub fn parse_rat(text: &str) -> Result<Rat> {
    let t = text.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: {text:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid = |s: &str, signed: bool| {
        let digits = if signed {
            s.strip_prefix(['-', '+']).unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Renders `p/q` in lowest terms, or `p` for integers.
pub fn render_rat(r: &Rat) -> String {
    r.to_string()
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Gcd of the numerators (non-negative; zero for an empty or all-zero input).
pub fn numerator_gcd<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, r| acc.gcd(r.numer()))
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_renders() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat(" -4 ").unwrap(), int(-4));
        assert_eq!(render_rat(&rat(10, 4)), "5/2");
        assert_eq!(render_rat(&int(1)), "1");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn content_helpers() {
        let v = [rat(1, 6), rat(3, 4)];
        assert_eq!(denominator_lcm(&v), BigInt::from(12));
        let w = [int(6), int(-9)];
        assert_eq!(numerator_gcd(&w), BigInt::from(3));
    }
}
