//! Integer-coefficient polynomials, Sturm sequences, and rational roots.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rat::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error in polynomial at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is zero")]
    ZeroPolynomial,
}

/// Polynomial with integer coefficients, stored low degree first with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + big_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::new(vec![]);
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    fn to_rat_coeffs(&self) -> Vec<Rat> {
        self.coeffs
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect()
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.degree() <= 1 {
            return true;
        }
        let g = rat_gcd(&self.to_rat_coeffs(), &self.derivative().to_rat_coeffs());
        g.len() <= 1
    }

    /// Sturm count of real roots strictly less than `q`. Requires a
    /// squarefree nonzero polynomial.
    pub fn count_roots_below(&self, q: &Rat) -> Result<u32, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if !self.is_squarefree() {
            return Err(PolyError::NotSquarefree);
        }
        let mut p = self.to_rat_coeffs();
        // If q itself is a root, deflate: the remaining roots below q are
        // the roots of the quotient below q (squarefree, so q is simple).
        while eval_rat(&p, q).is_zero() && p.len() > 1 {
            p = deflate(&p, q);
        }
        let chain = sturm_chain(p);
        Ok(variations_at_neg_inf(&chain) - variations_at(&chain, q))
    }

    /// Total number of distinct real roots.
    pub fn count_real_roots(&self) -> Result<u32, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if !self.is_squarefree() {
            return Err(PolyError::NotSquarefree);
        }
        let chain = sturm_chain(self.to_rat_coeffs());
        Ok(variations_at_neg_inf(&chain) - variations_at_pos_inf(&chain))
    }

    /// All rational roots, found by the rational root theorem.
    pub fn rational_roots(&self) -> Vec<Rat> {
        let mut p = self.to_rat_coeffs();
        let mut roots = Vec::new();
        if p.is_empty() {
            return roots;
        }
        // factor out x^k
        while p.first().map_or(false, |c| c.is_zero()) && p.len() > 1 {
            p.remove(0);
            if !roots.contains(&Rat::zero()) {
                roots.push(Rat::zero());
            }
        }
        if p.len() <= 1 {
            roots.sort();
            return roots;
        }
        // candidates +-(d0/dn) over divisors of the integer-cleared
        // constant and leading coefficients
        let d0s = divisors(&scale_to_int(&p, true));
        let dns = divisors(&scale_to_int(&p, false));
        for n in &d0s {
            for d in &dns {
                for cand in [
                    Rat::new(n.clone(), d.clone()),
                    Rat::new(-n.clone(), d.clone()),
                ] {
                    if eval_rat(&p, &cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Cauchy bound: all real roots lie in (-B, B).
    pub fn root_bound(&self) -> Rat {
        let lead = self.coeffs.last().cloned().unwrap_or_else(BigInt::one);
        let max = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::one);
        Rat::one() + Rat::new(max, lead.abs())
    }

    /// Isolating intervals `(lo, hi]` for every real root, each with
    /// non-root rational endpoints, sorted by root.
    pub fn isolate_real_roots(&self) -> Result<Vec<(Rat, Rat)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if !self.is_squarefree() {
            return Err(PolyError::NotSquarefree);
        }
        let chain = sturm_chain(self.to_rat_coeffs());
        let bound = self.root_bound();
        let mut out = Vec::new();
        let lo = -bound.clone();
        let hi = bound;
        // endpoints +-B are never roots by the Cauchy bound
        self.isolate_rec(&chain, lo, hi, &mut out);
        Ok(out)
    }

    fn isolate_rec(&self, chain: &[Vec<Rat>], lo: Rat, hi: Rat, out: &mut Vec<(Rat, Rat)>) {
        let count = variations_at(chain, &lo) - variations_at(chain, &hi);
        match count {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mut mid = (&lo + &hi) / Rat::from_integer(BigInt::from(2));
                // nudge off a root so interval endpoints stay sign-definite
                while self.eval(&mid).is_zero() {
                    mid = (&lo + &mid) / Rat::from_integer(BigInt::from(2));
                }
                self.isolate_rec(chain, lo, mid.clone(), out);
                self.isolate_rec(chain, mid, hi, out);
            }
        }
    }
}

fn big_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::INFINITY)
}

fn lcm_of_denoms(p: &[Rat]) -> BigInt {
    use num_integer::Integer;
    p.iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Clears denominators; returns |constant coefficient| (skipping leading
/// zeros) when `constant` is true, else |leading coefficient|.
fn scale_to_int(p: &[Rat], constant: bool) -> BigInt {
    let l = lcm_of_denoms(p);
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * &l / c.denom()).collect();
    if constant {
        ints.iter()
            .find(|c| !c.is_zero())
            .cloned()
            .unwrap_or_else(BigInt::one)
            .abs()
    } else {
        ints.last().cloned().unwrap_or_else(BigInt::one).abs()
    }
}

/// All positive divisors of |n|, by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}

fn eval_rat(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c.clone();
    }
    acc
}

/// Synthetic division of `p` by `(x - q)`, assuming `p(q) = 0`.
fn deflate(p: &[Rat], q: &Rat) -> Vec<Rat> {
    let n = p.len();
    let mut out = vec![Rat::zero(); n - 1];
    let mut carry = Rat::zero();
    for i in (1..n).rev() {
        carry = &p[i] + &carry * q;
        out[i - 1] = carry.clone();
    }
    out
}

fn normalize(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Remainder of polynomial division over the rationals.
fn rat_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        let f = lr / lb;
        for i in 0..=db {
            let t = &b[i] * &f;
            r[shift + i] = &r[shift + i] - t;
        }
        r = normalize(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn rat_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut a = normalize(a.to_vec());
    let mut b = normalize(b.to_vec());
    while !b.is_empty() {
        let r = rat_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Sturm chain of `p`: `p, p', -rem(...)`.
fn sturm_chain(p: Vec<Rat>) -> Vec<Vec<Rat>> {
    let mut chain = Vec::new();
    let p0 = normalize(p);
    if p0.is_empty() {
        return chain;
    }
    let p1 = normalize(
        p0.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
            .collect(),
    );
    chain.push(p0);
    if p1.is_empty() {
        return chain;
    }
    chain.push(p1);
    loop {
        let n = chain.len();
        let r = rat_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    chain
}

fn sign(r: &Rat) -> i8 {
    match r.cmp(&Rat::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

fn count_variations(signs: impl Iterator<Item = i8>) -> u32 {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(chain: &[Vec<Rat>], x: &Rat) -> u32 {
    count_variations(chain.iter().map(|p| sign(&eval_rat(p, x))))
}

fn variations_at_neg_inf(chain: &[Vec<Rat>]) -> u32 {
    count_variations(chain.iter().map(|p| {
        let lead = sign(p.last().unwrap());
        if (p.len() - 1) % 2 == 0 {
            lead
        } else {
            -lead
        }
    }))
}

fn variations_at_pos_inf(chain: &[Vec<Rat>]) -> u32 {
    count_variations(chain.iter().map(|p| sign(p.last().unwrap())))
}

/// Parses "x^3 - 2x + 1" style text with integer coefficients. `*` between
/// a coefficient and `x` is optional.
pub fn parse_poly(text: &str) -> Result<IntPoly, PolyError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut coeffs: Vec<BigInt> = Vec::new();
    let err = |pos: usize, msg: &str| PolyError::Syntax {
        pos,
        msg: msg.to_string(),
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            if first {
                return Err(err(pos, "empty polynomial"));
            }
            break;
        }
        let neg = match bytes[pos] {
            b'+' => {
                pos += 1;
                false
            }
            b'-' => {
                pos += 1;
                true
            }
            _ if first => false,
            _ => return Err(err(pos, "expected '+' or '-'")),
        };
        first = false;
        skip_ws(&mut pos);
        // coefficient
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let coeff: BigInt = if start == pos {
            BigInt::one()
        } else {
            std::str::from_utf8(&bytes[start..pos]).unwrap().parse().unwrap()
        };
        let coeff = if neg { -coeff } else { coeff };
        skip_ws(&mut pos);
        if pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
            skip_ws(&mut pos);
        }
        let mut deg = 0usize;
        if pos < bytes.len() && bytes[pos] == b'x' {
            pos += 1;
            deg = 1;
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                skip_ws(&mut pos);
                let dstart = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if dstart == pos {
                    return Err(err(pos, "expected exponent digits"));
                }
                deg = std::str::from_utf8(&bytes[dstart..pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| err(pos, "exponent too large"))?;
            }
        } else if start == pos {
            return Err(err(pos, "expected coefficient or 'x'"));
        }
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, BigInt::zero());
        }
        coeffs[deg] += coeff;
    }
    Ok(IntPoly::new(coeffs))
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            match deg {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    if deg == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn p(s: &str) -> IntPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("x^2 - 2"), IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(p("x^3-2x+1"), IntPoly::from_i64(&[1, -2, 0, 1]));
        assert_eq!(p("-x + 5").to_string(), "-x + 5");
        assert_eq!(p("3*x^2").to_string(), "3x^2");
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x^").is_err());
    }

    #[test]
    fn sturm_examples() {
        let sq2 = p("x^2 - 2");
        assert_eq!(sq2.count_roots_below(&int(0)).unwrap(), 1);
        assert_eq!(sq2.count_roots_below(&int(2)).unwrap(), 2);
        assert_eq!(sq2.count_real_roots().unwrap(), 2);
        // root at the query point: strictly-below count
        let lin = p("x^2 - 1");
        assert_eq!(lin.count_roots_below(&int(1)).unwrap(), 1);
        assert_eq!(lin.count_roots_below(&int(-1)).unwrap(), 0);
    }

    #[test]
    fn not_squarefree() {
        let sq = p("x^2 - 2x + 1");
        assert_eq!(sq.count_roots_below(&int(5)), Err(PolyError::NotSquarefree));
        assert!(!sq.is_squarefree());
        assert!(p("x^3 - 2").is_squarefree());
    }

    #[test]
    fn rational_roots() {
        assert_eq!(p("x - 1").rational_roots(), vec![int(1)]);
        assert_eq!(p("x^2 - 2").rational_roots(), vec![]);
        assert_eq!(
            p("2x^2 - 3x + 1").rational_roots(),
            vec![rat(1, 2), int(1)]
        );
        assert_eq!(p("x^3 - 2").rational_roots(), vec![]);
        assert_eq!(p("x^2 - x").rational_roots(), vec![int(0), int(1)]);
    }

    #[test]
    fn isolation() {
        let ivs = p("x^2 - 2").isolate_real_roots().unwrap();
        assert_eq!(ivs.len(), 2);
        // each interval contains one sign change
        for (lo, hi) in &ivs {
            let a = p("x^2 - 2").eval(lo);
            let b = p("x^2 - 2").eval(hi);
            assert!(a.is_positive() != b.is_positive());
        }
    }
}
