//! Closed-form generators of strictly monotone rational nets converging to
//! a target point.
//!
//! Two schemes:
//! * halving-distance, for rational targets: the distance to the target
//!   halves at every step;
//! * dyadic, for irrational (`a + b*sqrt(2)`) targets: step `n` is the
//!   binary truncation of the target at its `n`-th one-bit (for increasing
//!   nets; zero-bits and rounding up for decreasing ones), which is
//!   strictly monotone and within `2^-n` of the target.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use crate::quad::Quad;
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NetTarget {
    Rational(Rat),
    /// An irrational point of the form `a + b*sqrt(2)`.
    Quadratic(Quad),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// `term(n) = target -+ (target - start) / 2^n`; target must be rational.
    HalvingDistance,
    /// Binary truncations of an irrational target, with the strictness
    /// adjustment that skips repeated truncations.
    DyadicFloor,
}

#[derive(Clone, Debug)]
pub struct NetSpec {
    pub target: NetTarget,
    pub direction: Direction,
    pub scheme: Scheme,
    pub start: Rat,
}

impl NetSpec {
    pub fn halving(target: Rat, start: Rat) -> NetSpec {
        let direction = if start < target {
            Direction::Increasing
        } else {
            Direction::Decreasing
        };
        NetSpec {
            target: NetTarget::Rational(target),
            direction,
            scheme: Scheme::HalvingDistance,
            start,
        }
    }

    pub fn dyadic(target: Quad, start: Rat) -> NetSpec {
        let direction = match target.cmp_rat(&start) {
            Ordering::Greater => Direction::Increasing,
            _ => Direction::Decreasing,
        };
        NetSpec {
            target: NetTarget::Quadratic(target),
            direction,
            scheme: Scheme::DyadicFloor,
            start,
        }
    }

    /// The `n`-th term. Strictly monotone in `n`; within `2^-n` of the
    /// target for the dyadic scheme.
    pub fn term(&self, n: u64) -> Rat {
        match (&self.scheme, &self.target) {
            (Scheme::HalvingDistance, NetTarget::Rational(c)) => {
                let gap = c - &self.start;
                let denom = Rat::from_integer(BigInt::from(2).pow(
                    u32::try_from(n).expect("halving net index out of range"),
                ));
                c - gap / denom
            }
            (Scheme::DyadicFloor, NetTarget::Quadratic(theta)) => {
                if n == 0 {
                    return self.start.clone();
                }
                match self.direction {
                    Direction::Increasing => dyadic_from_below(theta, &self.start, n),
                    Direction::Decreasing => dyadic_from_above(theta, &self.start, n),
                }
            }
            (Scheme::HalvingDistance, NetTarget::Quadratic(_)) => {
                panic!("halving-distance scheme needs a rational target")
            }
            (Scheme::DyadicFloor, NetTarget::Rational(_)) => {
                panic!("dyadic scheme needs an irrational target")
            }
        }
    }
}

/// The `n`-th strictly-increasing binary truncation of `theta` above
/// `start`: scan the binary expansion and keep the truncation value after
/// each one-bit, skipping values not exceeding `start`.
fn dyadic_from_below(theta: &Quad, start: &Rat, n: u64) -> Rat {
    nth_truncation(theta, start, n, false)
}

/// Decreasing counterpart: round `theta` up at each precision and keep the
/// strictly smaller values below `start`.
fn dyadic_from_above(theta: &Quad, start: &Rat, n: u64) -> Rat {
    nth_truncation(theta, start, n, true)
}

/// Shared scan. With `above` false: the truncation value `floor(theta*2^p)
/// / 2^p` strictly increases exactly at the one-bits of theta, and once a
/// value exceeds `start` all later ones do; so only the first qualifying
/// position needs an exact comparison, the rest is bit counting. With
/// `above` true the same holds for `ceil` values, zero-bits, and `< start`.
fn nth_truncation(theta: &Quad, start: &Rat, n: u64, above: bool) -> Rat {
    let num = start.numer();
    let den = start.denom();
    let mut prec: u32 = (4 * n).try_into().expect("net index out of range");
    'retry: loop {
        let scaled = theta.floor_scaled(prec); // floor(theta * 2^prec)
        // value changes at p exactly when floor(theta*2^p) is odd, i.e. at
        // bit prec-p of scaled (two's complement agrees with floor shifts)
        let changes = |p: u32| scaled.bit((prec - p) as u64) != above;
        let mut found: Option<u32> = None;
        for p in 1..=prec {
            if changes(p) {
                let at_p = &scaled >> (prec - p);
                let ok = if above {
                    (at_p + 1) * den < num << p
                } else {
                    at_p * den > num << p
                };
                if ok {
                    found = Some(p);
                    break;
                }
            }
        }
        let Some(mut p) = found else {
            prec *= 2;
            continue;
        };
        let mut remaining = n - 1;
        while remaining > 0 {
            p += 1;
            if p > prec {
                prec *= 2;
                continue 'retry;
            }
            if changes(p) {
                remaining -= 1;
            }
        }
        let at_p = &scaled >> (prec - p);
        let numer = if above { at_p + 1 } else { at_p };
        return Rat::new(numer, BigInt::one() << p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn halving_toward_half() {
        let net = NetSpec::halving(rat(1, 2), int(0));
        let want = [int(0), rat(1, 4), rat(3, 8), rat(7, 16)];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(net.term(n as u64), *w);
        }
    }

    #[test]
    fn dyadic_toward_sqrt2_from_below() {
        let net = NetSpec::dyadic(Quad::sqrt2(), int(1));
        let want = [int(1), rat(5, 4), rat(11, 8), rat(45, 32)];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(net.term(n as u64), *w, "term {n}");
        }
    }

    #[test]
    fn dyadic_toward_sqrt2_from_above() {
        let net = NetSpec::dyadic(Quad::sqrt2(), int(2));
        let mut prev = net.term(0);
        assert_eq!(prev, int(2));
        for n in 1..20u64 {
            let t = net.term(n);
            assert!(t < prev, "strictly decreasing at {n}");
            assert_eq!(
                Quad::sqrt2().cmp_rat(&t),
                Ordering::Less,
                "stays above the target"
            );
            // dyadic error bound
            let err = &t - {
                let (lo, _) = Quad::sqrt2().bounds(80);
                lo
            };
            assert!(err <= crate::rat::pow2(-(n as i64)) + crate::rat::pow2(-70));
            prev = t;
        }
    }

    #[test]
    fn dyadic_error_bound_below() {
        let net = NetSpec::dyadic(Quad::sqrt2(), int(1));
        for n in 1..30u64 {
            let t = net.term(n);
            let (_, hi) = Quad::sqrt2().bounds(80);
            assert!(&hi - &t <= crate::rat::pow2(-(n as i64)) + crate::rat::pow2(-70));
        }
    }
}
