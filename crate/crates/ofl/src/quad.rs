//! Exact numbers of the form `a + b*sqrt(2)` with rational `a`, `b`.
//!
//! Gap points inside rational intervals are chosen in this field because
//! every comparison against a rational reduces to one sign test on a
//! degree-two expression. Dyadic floor/ceil (used by the net generators)
//! is exact, backed by a cached integer square root of 2 at growing
//! precision.

use std::cmp::Ordering;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quad {
    /// rational part
    pub a: Rat,
    /// coefficient of sqrt(2)
    pub b: Rat,
}

impl Quad {
    pub fn new(a: Rat, b: Rat) -> Quad {
        Quad { a, b }
    }

    pub fn from_rat(a: Rat) -> Quad {
        Quad {
            a,
            b: Rat::zero(),
        }
    }

    pub fn sqrt2() -> Quad {
        Quad {
            a: Rat::zero(),
            b: Rat::one(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add_rat(&self, r: &Rat) -> Quad {
        Quad {
            a: &self.a + r,
            b: self.b.clone(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Quad {
        Quad {
            a: &self.a * r,
            b: &self.b * r,
        }
    }

    pub fn sub(&self, other: &Quad) -> Quad {
        Quad {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
        }
    }

    /// Sign of `a + b*sqrt(2)`. All the comparison paths below work on
    /// plain integers: rational operations would gcd-reduce huge operands
    /// on every call, which dominates everything at deep net indices.
    pub fn sign(&self) -> Ordering {
        let a = self.a.numer() * self.b.denom();
        let b = self.b.numer() * self.a.denom();
        int_pair_sign(&a, &b)
    }

    pub fn cmp_rat(&self, q: &Rat) -> Ordering {
        // common positive denominator ad*qd*bd
        let a = (self.a.numer() * q.denom() - q.numer() * self.a.denom()) * self.b.denom();
        let b = self.b.numer() * self.a.denom() * q.denom();
        int_pair_sign(&a, &b)
    }

    pub fn cmp_quad(&self, other: &Quad) -> Ordering {
        self.sub(other).sign()
    }

    /// Sign of `self * 2^prec - m`.
    fn scaled_cmp_int(&self, prec: u32, m: &BigInt) -> Ordering {
        let a = ((self.a.numer() << prec) - m * self.a.denom()) * self.b.denom();
        let b = (self.b.numer() * self.a.denom()) << prec;
        int_pair_sign(&a, &b)
    }

    /// Exact floor of `self * 2^prec`, as an integer.
    pub fn floor_scaled(&self, prec: u32) -> BigInt {
        use num_integer::Integer;
        let (an, ad) = (self.a.numer(), self.a.denom());
        let (bn, bd) = (self.b.numer(), self.b.denom());
        if bn.is_zero() {
            return (an << prec).div_floor(ad);
        }
        // self*2^prec = (an*bd*2^pp + bn*ad*sqrt2*2^pp) / (ad*bd*2^(pp-prec))
        // with sqrt2*2^pp in [s, s+1); the error after floor-dividing the
        // lower estimate is below 1 for a wide enough guard, so at most a
        // couple of exact fixup steps remain.
        let guard = 64 + (bn.bits() + ad.bits()) as u32;
        let (pp, s) = sqrt2_approx(prec + guard);
        let approx = ((an * bd) << pp) + bn * ad * s;
        let denom = (ad * bd) << (pp - prec);
        let mut n = approx.div_floor(&denom);
        while self.scaled_cmp_int(prec, &(&n + 1)) != Ordering::Less {
            n += 1;
        }
        while self.scaled_cmp_int(prec, &n) == Ordering::Less {
            n -= 1;
        }
        n
    }

    /// Exact floor as an integer.
    pub fn floor_int(&self) -> BigInt {
        self.floor_scaled(0)
    }

    pub fn ceil_scaled(&self, prec: u32) -> BigInt {
        let f = self.floor_scaled(prec);
        if self.scaled_cmp_int(prec, &f) == Ordering::Equal {
            f
        } else {
            f + 1
        }
    }

    /// Rational bracket `(lo, hi]`... more precisely `lo <= self < hi` with
    /// `hi - lo = 2^-prec`.
    pub fn bounds(&self, prec: u32) -> (Rat, Rat) {
        let f = self.floor_scaled(prec);
        let denom = BigInt::from(2).pow(prec);
        let lo = Rat::new(f.clone(), denom.clone());
        let hi = Rat::new(f + 1, denom);
        (lo, hi)
    }

    /// Decimal-free check used by tests: is `self` strictly inside `(lo, hi)`?
    pub fn strictly_between(&self, lo: &Quad, hi: &Quad) -> bool {
        self.cmp_quad(lo) == Ordering::Greater && self.cmp_quad(hi) == Ordering::Less
    }
}

/// Sign of `a + b*sqrt(2)` for integer `a`, `b`.
fn int_pair_sign(a: &BigInt, b: &BigInt) -> Ordering {
    if b.is_zero() {
        return a.cmp(&BigInt::from(0));
    }
    if b.is_positive() {
        if !a.is_negative() {
            Ordering::Greater
        } else {
            // positive iff 2 b^2 > a^2
            ((b * b) * BigInt::from(2)).cmp(&(a * a))
        }
    } else if !a.is_positive() {
        Ordering::Less
    } else {
        (a * a).cmp(&((b * b) * BigInt::from(2)))
    }
}

/// Returns `(p, s)` with `s = floor(sqrt(2) * 2^p)` and `p >= min_bits`.
/// The value is cached and only recomputed when more precision is needed.
pub fn sqrt2_approx(min_bits: u32) -> (u32, BigInt) {
    static CACHE: Mutex<Option<(u32, BigInt)>> = Mutex::new(None);
    let mut guard = CACHE.lock().unwrap();
    match &*guard {
        Some((p, s)) if *p >= min_bits => (*p, s.clone()),
        _ => {
            let p = min_bits.next_power_of_two().max(64);
            let s = (BigInt::from(2) << (2 * p as usize)).sqrt();
            *guard = Some((p, s.clone()));
            (p, guard.as_ref().unwrap().1.clone())
        }
    }
}
