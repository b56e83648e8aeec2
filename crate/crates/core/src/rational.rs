//! Rational helpers shared by the numeric modules.

use alloc::string::String;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number.
pub type Q = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Smallest integer `>= x`.
pub fn ceil(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

/// Smallest integer `>= x`, as `u64`. Returns 0 for non-positive `x` and
/// saturates on overflow.
pub fn ceil_u64(x: &Q) -> u64 {
    use num_traits::ToPrimitive;
    let c = ceil(x);
    if c.is_negative() {
        0
    } else {
        c.to_u64().unwrap_or(u64::MAX)
    }
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"-0.125"`.
pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac.is_empty())
        {
            return None;
        }
        let mut digits = String::from(int_digits);
        digits.push_str(frac);
        let n: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().ok()?
        };
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let v = Q::new(n, d);
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(Q::from_integer)
}

/// True when every coefficient is an even integer.
pub fn is_even_integer(x: &Q) -> bool {
    x.is_integer() && x.to_integer().is_even()
}

/// Mediant-free midpoint of two rationals.
pub fn midpoint(a: &Q, b: &Q) -> Q {
    (a + b) / qi(2)
}

/// Converts to `f64`, rounding to nearest.
pub fn to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational from a finite `f64`.
pub fn from_f64(x: f64) -> Option<Q> {
    Q::from_float(x)
}

/// `1` as a rational.
pub fn one() -> Q {
    Q::one()
}
