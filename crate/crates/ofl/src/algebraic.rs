//! Real algebraic numbers as a squarefree integer polynomial plus an
//! isolating rational interval.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::poly::{IntPoly, PolyError};
use crate::rat::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraicError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("interval [{0}, {1}] does not isolate exactly one root")]
    NotIsolating(String, String),
    #[error("no real root with index {0}")]
    NoSuchRoot(usize),
}

/// A real root of a squarefree integer polynomial, pinned down by an
/// isolating interval with non-root rational endpoints. A degenerate
/// interval (`lo == hi`) denotes the rational number `lo` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    poly: IntPoly,
    lo: Rat,
    hi: Rat,
}

impl AlgebraicNumber {
    pub fn new(poly: IntPoly, lo: Rat, hi: Rat) -> Result<AlgebraicNumber, AlgebraicError> {
        if lo == hi {
            if !poly.eval(&lo).is_zero() {
                return Err(AlgebraicError::NotIsolating(lo.to_string(), hi.to_string()));
            }
            return Ok(AlgebraicNumber { poly, lo, hi });
        }
        if poly.eval(&lo).is_zero() || poly.eval(&hi).is_zero() {
            return Err(AlgebraicError::NotIsolating(lo.to_string(), hi.to_string()));
        }
        let below_lo = poly.count_roots_below(&lo)?;
        let below_hi = poly.count_roots_below(&hi)?;
        if below_hi - below_lo != 1 {
            return Err(AlgebraicError::NotIsolating(lo.to_string(), hi.to_string()));
        }
        Ok(AlgebraicNumber { poly, lo, hi })
    }

    /// The `index`-th real root of `poly` (sorted increasingly).
    pub fn root_of(poly: IntPoly, index: usize) -> Result<AlgebraicNumber, AlgebraicError> {
        let mut intervals = poly.isolate_real_roots()?;
        // surface exact rational roots with degenerate intervals
        let rational = poly.rational_roots();
        for (lo, hi) in intervals.iter_mut() {
            if let Some(r) = rational.iter().find(|r| *lo < **r && **r <= *hi) {
                *lo = r.clone();
                *hi = r.clone();
            }
        }
        if index >= intervals.len() {
            return Err(AlgebraicError::NoSuchRoot(index));
        }
        let (lo, hi) = intervals[index].clone();
        Ok(AlgebraicNumber { poly, lo, hi })
    }

    pub fn sqrt2() -> AlgebraicNumber {
        AlgebraicNumber {
            poly: IntPoly::from_i64(&[-2, 0, 1]),
            lo: Rat::from_integer(BigInt::from(1)),
            hi: Rat::from_integer(BigInt::from(2)),
        }
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn interval(&self) -> (&Rat, &Rat) {
        (&self.lo, &self.hi)
    }

    /// Compares the represented root against a rational.
    pub fn cmp_rat(&self, q: &Rat) -> Ordering {
        if self.lo == self.hi {
            return self.lo.cmp(q);
        }
        if *q <= self.lo {
            return if *q == self.lo && self.poly.eval(q).is_zero() {
                Ordering::Equal
            } else {
                Ordering::Greater
            };
        }
        if *q >= self.hi {
            return Ordering::Less;
        }
        let at_q = self.poly.eval(q);
        if at_q.is_zero() {
            return Ordering::Equal;
        }
        // Exactly one root lies in (lo, hi) and neither endpoint is a root,
        // so a matching sign with the left endpoint puts the root above q.
        if at_q.is_positive() == self.poly.eval(&self.lo).is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Is the root a rational number? Returns it if so.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.lo == self.hi {
            return Some(self.lo.clone());
        }
        self.poly
            .rational_roots()
            .into_iter()
            .find(|r| self.cmp_rat(r) == Ordering::Equal)
    }

    /// Shrinks the isolating interval to width at most `tol`.
    pub fn refine_to(&mut self, tol: &Rat) {
        if self.lo == self.hi {
            return;
        }
        let two = Rat::from_integer(BigInt::from(2));
        while &self.hi - &self.lo > *tol {
            let mid = (&self.lo + &self.hi) / &two;
            match self.cmp_rat(&mid) {
                Ordering::Greater => self.lo = mid,
                Ordering::Less => self.hi = mid,
                Ordering::Equal => {
                    self.lo = mid.clone();
                    self.hi = mid;
                    return;
                }
            }
        }
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "root of {} in [{}, {}]",
            self.poly, self.lo, self.hi
        )
    }
}
