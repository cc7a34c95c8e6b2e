//! The generalized power series field with rational exponents and rational
//! coefficients, truncated at a known order.
//!
//! An element is a finite, strictly exponent-sorted list of nonzero terms
//! together with a truncation order: the series represented is
//! `sum of terms + O(t^trunc)`, and `Trunc::Exact` means the sum is the whole
//! element. The indeterminate `t` is a positive infinitesimal, so the order
//! is decided by the sign of the coefficient at the minimum exponent of the
//! difference.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rat::{format_rat, Rat};

/// Element of the exponent group (the rationals).
pub type Exponent = Rat;
/// Element of the coefficient field (the rationals).
pub type Coefficient = Rat;

/// Truncation order: the exponent threshold below which coefficients are
/// exactly known. `Exact` plays the role of +infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trunc {
    Exact,
    Order(Exponent),
}

impl Trunc {
    pub fn min(a: &Trunc, b: &Trunc) -> Trunc {
        match (a, b) {
            (Trunc::Exact, t) | (t, Trunc::Exact) => t.clone(),
            (Trunc::Order(x), Trunc::Order(y)) => Trunc::Order(x.min(y).clone()),
        }
    }

    fn shift(&self, by: &Rat) -> Trunc {
        match self {
            Trunc::Exact => Trunc::Exact,
            Trunc::Order(x) => Trunc::Order(x + by),
        }
    }

    fn scale(&self, by: &Rat) -> Trunc {
        match self {
            Trunc::Exact => Trunc::Exact,
            Trunc::Order(x) => Trunc::Order(x * by),
        }
    }

    /// Is `e` strictly below the truncation threshold?
    fn admits(&self, e: &Rat) -> bool {
        match self {
            Trunc::Exact => true,
            Trunc::Order(x) => e < x,
        }
    }
}

/// Outcome of comparing two series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComparisonResult {
    Less,
    Greater,
    Equal,
    /// The visible parts agree; the operands may still differ at or above
    /// the given order.
    EqualUpToTruncation(Exponent),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("duplicate exponent {0} in series literal")]
    DuplicateExponent(String),
    #[error("division by a series with no visible leading term")]
    ZeroDivisor,
    #[error("square root of a series with negative leading coefficient")]
    NegativeLeading,
    #[error("leading coefficient {0} is not a square in the rationals")]
    NonSquareLeadingCoefficient(String),
    #[error("square root of the zero series")]
    ZeroSeries,
}

/// A generalized power series known modulo its truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    terms: Vec<(Exponent, Coefficient)>,
    trunc: Trunc,
}

impl Series {
    /// Builds a series from arbitrary terms: duplicates are summed, zero
    /// coefficients dropped, and terms at or above the truncation order
    /// discarded.
    pub fn from_terms(terms: Vec<(Exponent, Coefficient)>, trunc: Trunc) -> Series {
        let mut terms = terms;
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Exponent, Coefficient)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(e, c)| !c.is_zero() && trunc.admits(e));
        Series {
            terms: merged,
            trunc,
        }
    }

    pub fn zero() -> Series {
        Series {
            terms: Vec::new(),
            trunc: Trunc::Exact,
        }
    }

    pub fn one() -> Series {
        Series::constant(Rat::one())
    }

    pub fn constant(c: Coefficient) -> Series {
        Series::monomial(Rat::zero(), c)
    }

    pub fn monomial(exp: Exponent, coeff: Coefficient) -> Series {
        Series::from_terms(vec![(exp, coeff)], Trunc::Exact)
    }

    /// The single-term series `t^g` (the characteristic function of `{g}`).
    pub fn char_fn(g: Exponent) -> Series {
        Series::monomial(g, Rat::one())
    }

    /// The zero series known only up to `O(t^order)`.
    pub fn unknown_beyond(order: Exponent) -> Series {
        Series {
            terms: Vec::new(),
            trunc: Trunc::Order(order),
        }
    }

    pub fn terms(&self) -> &[(Exponent, Coefficient)] {
        &self.terms
    }

    pub fn trunc(&self) -> &Trunc {
        &self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == Trunc::Exact
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    /// Leading (minimum-exponent) term, if any is visible.
    pub fn lead(&self) -> Option<(&Exponent, &Coefficient)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    /// Coefficient at exponent `g` among the visible terms.
    pub fn coeff_at(&self, g: &Exponent) -> Coefficient {
        match self.terms.binary_search_by(|(e, _)| e.cmp(g)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    /// Effective minimum exponent for truncation propagation: the first
    /// visible exponent, else the truncation order for an inexact series
    /// with empty visible support.
    fn effective_lead(&self) -> Option<Rat> {
        match self.lead() {
            Some((e, _)) => Some(e.clone()),
            None => match &self.trunc {
                Trunc::Exact => None, // exact zero
                Trunc::Order(x) => Some(x.clone()),
            },
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let trunc = Trunc::min(&self.trunc, &other.trunc);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Series::from_terms(terms, trunc)
    }

    pub fn neg(&self) -> Series {
        Series {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            trunc: self.trunc.clone(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coefficient) -> Series {
        if c.is_zero() {
            // Unknown tails stay unknown in the truncated model even though
            // the true product is zero; keep the truncation.
            return Series {
                terms: Vec::new(),
                trunc: self.trunc.clone(),
            };
        }
        Series {
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
            trunc: self.trunc.clone(),
        }
    }

    /// Cauchy product. The truncation order is
    /// `min(trunc_a + lead_b, trunc_b + lead_a)`, with exact arms dropping
    /// out and a zero-visible inexact operand contributing its truncation
    /// order as its lead.
    pub fn mul(&self, other: &Series) -> Series {
        if self.is_zero() || other.is_zero() {
            return Series::zero();
        }
        let trunc = match (&self.trunc, other.effective_lead()) {
            (Trunc::Order(t), Some(l)) => Trunc::Order(t + l),
            _ => Trunc::Exact,
        };
        let trunc = Trunc::min(
            &trunc,
            &match (&other.trunc, self.effective_lead()) {
                (Trunc::Order(t), Some(l)) => Trunc::Order(t + l),
                _ => Trunc::Exact,
            },
        );
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                terms.push((ea + eb, ca * cb));
            }
        }
        Series::from_terms(terms, trunc)
    }

    /// Orders two series by the sign of the leading visible coefficient of
    /// their difference.
    pub fn compare(&self, other: &Series) -> ComparisonResult {
        let diff = self.sub(other);
        match diff.lead() {
            Some((_, c)) => {
                if c.is_positive() {
                    ComparisonResult::Greater
                } else {
                    ComparisonResult::Less
                }
            }
            None => match &diff.trunc {
                Trunc::Exact => ComparisonResult::Equal,
                Trunc::Order(x) => ComparisonResult::EqualUpToTruncation(x.clone()),
            },
        }
    }

    /// Splits `a = c t^mu (1 + eps)` with `eps` carrying strictly positive
    /// relative exponents. Returns `(mu, c, eps_relative)`.
    fn lead_split(&self) -> Option<(Rat, Rat, Series)> {
        let (mu, c) = {
            let (e, c) = self.lead()?;
            (e.clone(), c.clone())
        };
        let inv_c = Rat::one() / &c;
        let rel_terms: Vec<(Rat, Rat)> = self.terms[1..]
            .iter()
            .map(|(e, k)| (e - &mu, k * &inv_c))
            .collect();
        let rel_trunc = self.trunc.shift(&-mu.clone());
        Some((mu, c, Series::from_terms(rel_terms, rel_trunc)))
    }

    /// Multiplicative inverse, computed by the geometric series on the
    /// infinitesimal tail, up to `O(t^order)` (tightened further if the
    /// input truncation implies less is known).
    pub fn invert(&self, order: &Exponent) -> Result<Series, SeriesError> {
        let (mu, c, eps) = self.lead_split().ok_or(SeriesError::ZeroDivisor)?;
        let inv_lead = Series::monomial(-mu.clone(), Rat::one() / &c);
        if eps.terms.is_empty() && eps.is_exact() {
            // Inverse of a monomial is exact.
            return Ok(inv_lead);
        }
        // Relative precision of the input is trunc - mu; the inverse is then
        // known to the same relative precision, i.e. absolute trunc - 2*mu.
        let abs_order = match &self.trunc {
            Trunc::Exact => order.clone(),
            Trunc::Order(t) => order.min(&(t - &mu - &mu)).clone(),
        };
        let rel_order = &abs_order + &mu;
        let rel_trunc = Trunc::Order(rel_order.clone());
        let neg_eps = eps.neg().truncated(&rel_trunc);
        let mut acc = Series::one();
        let mut pow = Series::one();
        loop {
            pow = pow.mul(&neg_eps).truncated(&rel_trunc);
            if pow.terms.is_empty() {
                break;
            }
            acc = acc.add(&pow);
        }
        let mut out = acc.mul(&inv_lead);
        out = out.truncated(&Trunc::Order(abs_order));
        Ok(out)
    }

    /// Square root up to `O(t^order)`. The leading coefficient must be a
    /// positive square of a rational (the coefficient field is not real
    /// closed; `NonSquareLeadingCoefficient` marks that boundary).
    pub fn sqrt(&self, order: &Exponent) -> Result<Series, SeriesError> {
        let (mu, c, eps) = self.lead_split().ok_or(SeriesError::ZeroSeries)?;
        if c.is_negative() {
            return Err(SeriesError::NegativeLeading);
        }
        let root_c = rational_sqrt(&c)
            .ok_or_else(|| SeriesError::NonSquareLeadingCoefficient(format_rat(&c)))?;
        let half_mu = &mu / Rat::from_integer(BigInt::from(2));
        let lead_root = Series::monomial(half_mu.clone(), root_c);
        if eps.terms.is_empty() && eps.is_exact() {
            return Ok(lead_root);
        }
        // Input relative precision trunc - mu carries over; absolute order
        // of the root is then mu/2 + (trunc - mu) = trunc - mu/2.
        let abs_order = match &self.trunc {
            Trunc::Exact => order.clone(),
            Trunc::Order(t) => order.min(&(t - &half_mu)).clone(),
        };
        let rel_order = &abs_order - &half_mu;
        let rel_trunc = Trunc::Order(rel_order);
        let eps = eps.truncated(&rel_trunc);
        // Binomial series (1 + eps)^(1/2).
        let mut acc = Series::one();
        let mut pow = Series::one();
        let mut coeff = Rat::one();
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        let mut k = Rat::zero();
        loop {
            coeff *= (&half - &k) / (&k + Rat::one());
            pow = pow.mul(&eps).truncated(&rel_trunc);
            if pow.terms.is_empty() {
                break;
            }
            acc = acc.add(&pow.scale(&coeff));
            k += Rat::one();
        }
        let out = acc.mul(&lead_root).truncated(&Trunc::Order(abs_order));
        Ok(out)
    }

    /// The automorphism sending `t^g` to `t^(2g)`.
    pub fn automorphism_double(&self) -> Series {
        self.scale_exponents(&Rat::from_integer(BigInt::from(2)))
    }

    /// Inverse of [`Series::automorphism_double`].
    pub fn automorphism_halve(&self) -> Series {
        self.scale_exponents(&Rat::new(BigInt::one(), BigInt::from(2)))
    }

    fn scale_exponents(&self, by: &Rat) -> Series {
        Series {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e * by, c.clone()))
                .collect(),
            trunc: self.trunc.scale(by),
        }
    }

    /// Membership in the subring of series with no infinitesimal terms
    /// (all exponents at most zero). Only exact series qualify; a truncated
    /// series has unknown positive-exponent tail.
    pub fn is_in_subring_r(&self) -> bool {
        self.is_exact() && self.terms.iter().all(|(e, _)| !e.is_positive())
    }

    /// Do the visible terms alone stay in the subring? Meaningful for
    /// truncated prefixes of elements known to lie in it.
    pub fn visible_support_in_r(&self) -> bool {
        self.terms.iter().all(|(e, _)| !e.is_positive())
    }

    /// The infinite prime `1 + t^-1 + t^(-1/2) + ... + t^(-1/n)` of the
    /// subring, truncated to `n_terms` negative-exponent terms.
    pub fn pitteloud_prime(n_terms: u32) -> Series {
        assert!(n_terms >= 1, "need at least one term");
        let mut terms = vec![(Rat::zero(), Rat::one())];
        for k in 1..=n_terms {
            terms.push((Rat::new(BigInt::from(-1), BigInt::from(k)), Rat::one()));
        }
        Series::from_terms(terms, Trunc::Exact)
    }

    /// Re-truncates to `min(self.trunc, trunc)`, discarding terms at or
    /// above the new order.
    pub fn truncated(&self, trunc: &Trunc) -> Series {
        let trunc = Trunc::min(&self.trunc, trunc);
        Series::from_terms(self.terms.clone(), trunc)
    }
}

/// Exact square root of a nonnegative rational, when it exists in the
/// rationals.
fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_series(self))
    }
}

fn format_exponent(e: &Rat) -> String {
    if e.is_one() {
        "t".to_string()
    } else if e.denom().is_one() && !e.is_negative() {
        format!("t^{}", e.numer())
    } else {
        format!("t^({})", format_rat(e))
    }
}

/// Canonical text form: terms by increasing exponent, reduced rationals,
/// exponent parenthesized when negative or fractional.
pub fn format_series(s: &Series) -> String {
    let mut out = String::new();
    if s.terms.is_empty() {
        out.push('0');
    } else {
        for (i, (e, c)) in s.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            if e.is_zero() {
                out.push_str(&format_rat(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&format_rat(&a));
                    out.push('*');
                }
                out.push_str(&format_exponent(e));
            }
        }
    }
    if let Trunc::Order(x) = &s.trunc {
        out.push_str(" + O(");
        out.push_str(&format_exponent_for_order(x));
        out.push(')');
    }
    out
}

fn format_exponent_for_order(e: &Rat) -> String {
    if e.denom().is_one() && !e.is_negative() {
        format!("t^{}", e.numer())
    } else {
        format!("t^({})", format_rat(e))
    }
}

struct Scanner<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str) -> Self {
        Scanner {
            input: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<(), SeriesError> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            _ => Err(self.error(&format!("expected '{}'", c as char))),
        }
    }

    fn error(&self, msg: &str) -> SeriesError {
        SeriesError::Syntax {
            pos: self.pos.min(self.input.len()),
            msg: msg.to_string(),
        }
    }

    fn digits(&mut self) -> Result<BigInt, SeriesError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    /// unsigned rational: digits ('/' digits)?
    fn unsigned_rational(&mut self) -> Result<Rat, SeriesError> {
        let n = self.digits()?;
        if self.peek() == Some(b'/') {
            self.bump();
            let d = self.digits()?;
            if d.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(Rat::new(n, d))
        } else {
            Ok(Rat::from_integer(n))
        }
    }

    fn signed_rational(&mut self) -> Result<Rat, SeriesError> {
        let neg = if self.peek() == Some(b'-') {
            self.bump();
            true
        } else {
            false
        };
        let r = self.unsigned_rational()?;
        Ok(if neg { -r } else { r })
    }

    /// exp := rational | '(' '-'? rational ')'
    fn exponent(&mut self) -> Result<Rat, SeriesError> {
        if self.peek() == Some(b'(') {
            self.bump();
            let r = self.signed_rational()?;
            self.expect(b')')?;
            Ok(r)
        } else {
            self.signed_rational()
        }
    }

    /// Optional `^exp` after `t`; a bare `t` has exponent 1.
    fn t_exponent(&mut self) -> Result<Rat, SeriesError> {
        if self.peek() == Some(b'^') {
            self.bump();
            self.exponent()
        } else {
            Ok(Rat::one())
        }
    }

    /// term := coeff ('*' 't' ('^' exp)?)? | 't' ('^' exp)?
    /// `sign` is the +1/-1 carried by the preceding separator.
    fn term(&mut self, sign: i32) -> Result<(Rat, Rat), SeriesError> {
        let mut s = if sign < 0 { -Rat::one() } else { Rat::one() };
        // a leading '-' may precede either a coefficient or a bare t: "-t^2"
        if self.peek() == Some(b'-') {
            self.bump();
            s = -s;
        }
        match self.peek() {
            Some(b't') => {
                self.bump();
                let e = self.t_exponent()?;
                Ok((e, s))
            }
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.unsigned_rational()?;
                if self.peek() == Some(b'*') {
                    self.bump();
                    self.expect(b't')?;
                    let e = self.t_exponent()?;
                    Ok((e, coeff * s))
                } else {
                    Ok((Rat::zero(), coeff * s))
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

/// Parses the series grammar. Round-trips with [`format_series`].
pub fn parse_series(text: &str) -> Result<Series, SeriesError> {
    let mut sc = Scanner::new(text);
    let mut terms: Vec<(Rat, Rat)> = Vec::new();
    let mut trunc = Trunc::Exact;
    let first = sc.term(1)?;
    push_term(&mut terms, first)?;
    loop {
        match sc.peek() {
            None => break,
            Some(b'+') => {
                sc.bump();
                if sc.peek() == Some(b'O') {
                    sc.bump();
                    sc.expect(b'(')?;
                    sc.expect(b't')?;
                    sc.expect(b'^')?;
                    let e = sc.exponent()?;
                    sc.expect(b')')?;
                    if sc.peek().is_some() {
                        return Err(sc.error("trailing input after O(...)"));
                    }
                    trunc = Trunc::Order(e);
                    break;
                }
                let t = sc.term(1)?;
                push_term(&mut terms, t)?;
            }
            Some(b'-') => {
                sc.bump();
                let t = sc.term(-1)?;
                push_term(&mut terms, t)?;
            }
            Some(_) => return Err(sc.error("expected '+', '-' or end of input")),
        }
    }
    Ok(Series::from_terms(terms, trunc))
}

fn push_term(terms: &mut Vec<(Rat, Rat)>, t: (Rat, Rat)) -> Result<(), SeriesError> {
    if terms.iter().any(|(e, _)| *e == t.0) {
        return Err(SeriesError::DuplicateExponent(format_rat(&t.0)));
    }
    terms.push(t);
    Ok(())
}

impl std::ops::Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series::add(self, rhs)
    }
}

impl std::ops::Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series::sub(self, rhs)
    }
}

impl std::ops::Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

impl std::ops::Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn s(text: &str) -> Series {
        parse_series(text).unwrap()
    }

    #[test]
    fn parse_examples() {
        let a = s("t^(-1) + 2*t^(1/2)");
        assert_eq!(
            a.terms(),
            &[(int(-1), int(1)), (rat(1, 2), int(2))]
        );
        assert!(a.is_exact());

        let z = s("0");
        assert!(z.terms().is_empty());
        assert!(z.is_exact());

        let b = s("1 - t + O(t^2)");
        assert_eq!(b.terms(), &[(int(0), int(1)), (int(1), int(-1))]);
        assert_eq!(b.trunc(), &Trunc::Order(int(2)));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_series("t + t"),
            Err(SeriesError::DuplicateExponent(_))
        ));
        assert!(matches!(
            parse_series("1 + + t"),
            Err(SeriesError::Syntax { .. })
        ));
        assert!(matches!(
            parse_series("1/0"),
            Err(SeriesError::Syntax { .. })
        ));
    }

    #[test]
    fn format_round_trips() {
        for text in [
            "t^(-1) + 2*t^(1/2)",
            "0",
            "1 - t + O(t^2)",
            "-3/2 + t^3",
            "-t",
            "-t^(-2) - t^2",
            "0 + O(t^(1/2))",
        ] {
            let a = s(text);
            let b = parse_series(&format_series(&a)).unwrap();
            assert_eq!(a, b, "round-trip of {text}");
        }
    }

    #[test]
    fn add_examples() {
        assert!(s("t").add(&s("t").neg()).is_zero());
        assert_eq!(s("1 + t^(1/2)").add(&s("1")), s("2 + t^(1/2)"));
        // truncation propagation: the t^5 term is invisible behind O(t^3)
        assert_eq!(s("1 + O(t^3)").add(&s("t^5")), s("1 + O(t^3)"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(s("t^(-1)").mul(&s("t^(-1/2)")), s("t^(-3/2)"));
        assert_eq!(s("1 + t").mul(&s("1 - t")), s("1 - t^2"));
    }

    #[test]
    fn mul_trunc_rule() {
        // (1 + O(t^3)) * t^2: trunc = 3 + 2 = 5
        let p = s("1 + O(t^3)").mul(&s("t^2"));
        assert_eq!(p.trunc(), &Trunc::Order(int(5)));
        // zero-visible inexact operand: lead = its trunc order
        let p = s("0 + O(t^2)").mul(&s("t^(-1)"));
        assert_eq!(p.trunc(), &Trunc::Order(int(1)));
        assert!(p.terms().is_empty());
    }

    #[test]
    fn compare_examples() {
        assert_eq!(s("t^(-1)").compare(&s("1000")), ComparisonResult::Greater);
        assert_eq!(s("t").compare(&s("1/1000000")), ComparisonResult::Less);
        assert_eq!(
            s("1 + O(t^1)").compare(&s("1 + O(t^2)")),
            ComparisonResult::EqualUpToTruncation(int(1))
        );
    }

    #[test]
    fn invert_examples() {
        assert_eq!(s("t").invert(&int(32)).unwrap(), s("t^(-1)"));
        assert_eq!(
            s("1 - t").invert(&int(4)).unwrap(),
            s("1 + t + t^2 + t^3 + O(t^4)")
        );
        assert_eq!(
            s("2 + t^(1/2)").invert(&rat(3, 2)).unwrap(),
            s("1/2 - 1/4*t^(1/2) + 1/8*t + O(t^(3/2))")
        );
    }

    #[test]
    fn invert_zero_divisor() {
        assert_eq!(
            Series::zero().invert(&int(4)),
            Err(SeriesError::ZeroDivisor)
        );
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(s("t^2").sqrt(&int(32)).unwrap(), s("t"));
        assert_eq!(
            s("1 + t").sqrt(&int(3)).unwrap(),
            s("1 + 1/2*t - 1/8*t^2 + O(t^3)")
        );
        assert_eq!(
            s("-1 + t").sqrt(&int(3)),
            Err(SeriesError::NegativeLeading)
        );
        assert!(matches!(
            s("2 + t").sqrt(&int(3)),
            Err(SeriesError::NonSquareLeadingCoefficient(_))
        ));
        assert_eq!(Series::zero().sqrt(&int(3)), Err(SeriesError::ZeroSeries));
    }

    #[test]
    fn sqrt_of_prime_leaves_subring() {
        let p = Series::pitteloud_prime(6);
        assert!(p.is_in_subring_r());
        let r = p.sqrt(&int(2)).unwrap();
        assert_eq!(r.lead().unwrap().0, &rat(-1, 2));
        assert!(r.terms().iter().any(|(e, _)| e.is_positive()));
        assert!(!r.is_in_subring_r());
        // squaring reproduces the prime up to the propagated order
        let sq = r.mul(&r);
        let diff = sq.sub(&p);
        assert!(diff.terms().is_empty(), "residual {diff}");
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(s("t^(1/2)").automorphism_double(), s("t"));
        assert_eq!(s("3 + 2*t^(-1)").automorphism_double(), s("3 + 2*t^(-2)"));
        let a = s("1 + t^(1/3) + O(t^2)");
        assert_eq!(a.automorphism_double().automorphism_halve(), a);
        assert_eq!(
            a.automorphism_double().trunc(),
            &Trunc::Order(int(4))
        );
    }

    #[test]
    fn subring_membership() {
        assert!(s("1 + t^(-1/2)").is_in_subring_r());
        assert!(!s("t").is_in_subring_r());
        assert!(!s("1 + O(t^2)").is_in_subring_r());
    }

    #[test]
    fn prime_series() {
        assert_eq!(Series::pitteloud_prime(1), s("1 + t^(-1)"));
        assert_eq!(
            Series::pitteloud_prime(3),
            s("t^(-1) + t^(-1/2) + t^(-1/3) + 1")
        );
        for n in 1..=12 {
            let p = Series::pitteloud_prime(n);
            assert!(p.is_in_subring_r());
            let exps: Vec<_> = p.terms().iter().map(|(e, _)| e.clone()).collect();
            assert!(exps.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn char_fn_examples() {
        assert_eq!(Series::char_fn(int(0)), s("1"));
        assert_eq!(Series::char_fn(int(-3)), s("t^(-3)"));
        let a = rat(1, 3);
        let b = rat(-5, 2);
        assert_eq!(
            Series::char_fn(a.clone()).mul(&Series::char_fn(b.clone())),
            Series::char_fn(a + b)
        );
    }
}
