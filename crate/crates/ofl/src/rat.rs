//! Small helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational. `BigRational` keeps itself in canonical
/// reduced form with a positive denominator, which is exactly the invariant
/// the exponent group and coefficient field need.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "p", "-p", "p/q" or "-p/q".
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (neg, s) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    let r = Rat::new(n, d);
    Some(if neg { -r } else { r })
}

/// Renders a rational as "p" or "p/q".
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed-point decimal rendering with `digits` fractional digits,
/// truncated toward zero.
pub fn format_decimal(r: &Rat, digits: u32) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (abs.numer() * &scale) / abs.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let mut frac = frac_part.to_string();
    while (frac.len() as u32) < digits {
        frac.insert(0, '0');
    }
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

/// 2^-k as a rational.
pub fn pow2(k: i64) -> Rat {
    let two = BigInt::from(2);
    if k >= 0 {
        Rat::from_integer(two.pow(k as u32))
    } else {
        Rat::new(BigInt::one(), two.pow((-k) as u32))
    }
}
