//! Infix expression evaluator over truncated series.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! atom   := integer | 't' | '(' expr ')'
//!         | 'O' '(' expr ')' | 'sqrt' '(' expr ')'
//!         | 'A' '(' expr ')' | 'A_inv' '(' expr ')'
//! exponent := integer | '(' ['-'] integer ['/' integer] ')'
//! ```
//!
//! Division is multiplication by the inverse at the working order; `O(e)`
//! requires its argument to reduce to an exact monomial `t^g` and denotes
//! the zero series known only below `g`. Non-integer exponents are allowed
//! only on exact monomial bases. Rational coefficients like `1/2` come out
//! of constant division, which is exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rat::{int, Rat};
use crate::series::{Series, SeriesError, Trunc};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("O(...) needs an exact coefficient-1 monomial argument")]
    BadTruncationArgument,
    #[error("non-integer exponent on a non-monomial base")]
    FractionalPower,
}

fn syn(pos: usize, msg: impl Into<String>) -> ExprError {
    ExprError::Syntax {
        pos,
        msg: msg.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    T,
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().unwrap();
                out.push((start, Tok::Int(n)));
            }
            _ if b.is_ascii_alphabetic() || b == b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &text[start..i];
                if word == "t" {
                    out.push((start, Tok::T));
                } else {
                    out.push((start, Tok::Ident(word.to_string())));
                }
            }
            _ => return Err(syn(i, format!("unexpected byte {:?}", b as char))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    order: Rat,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ExprError> {
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(syn(self.here(), format!("expected {want:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Series, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Series, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs.invert(&self.order)?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Series, ExprError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Series, ExprError> {
        let base = self.atom()?;
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(base);
        }
        self.bump();
        let e = self.exponent_literal()?;
        if e.is_integer() {
            return self.int_power(base, e.to_integer());
        }
        // fractional exponents only on exact coefficient-1 monomials
        match (base.terms(), base.trunc()) {
            ([(g, c)], Trunc::Exact) if c.is_one() => Ok(Series::char_fn(g * &e)),
            _ => Err(ExprError::FractionalPower),
        }
    }

    fn int_power(&self, base: Series, k: BigInt) -> Result<Series, ExprError> {
        if k.is_negative() {
            let inv = base.invert(&self.order)?;
            return self.int_power(inv, -k);
        }
        let mut acc = Series::one();
        let mut sq = base;
        let mut k = k;
        while k.is_positive() {
            if (&k % BigInt::from(2)).is_one() {
                acc = acc.mul(&sq);
            }
            k /= BigInt::from(2);
            if k.is_positive() {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Exponent after `^`: an integer, or a parenthesized signed rational.
    fn exponent_literal(&mut self) -> Result<Rat, ExprError> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Rat::from_integer(n)),
            Some(Tok::LParen) => {
                let neg = if matches!(self.peek(), Some(Tok::Minus)) {
                    self.bump();
                    true
                } else {
                    false
                };
                let numer = match self.bump() {
                    Some(Tok::Int(n)) => n,
                    _ => return Err(syn(self.here(), "expected integer in exponent")),
                };
                let denom = if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(n)) if !n.is_zero() => n,
                        _ => return Err(syn(self.here(), "expected nonzero denominator")),
                    }
                } else {
                    BigInt::one()
                };
                self.expect(Tok::RParen)?;
                let r = Rat::new(numer, denom);
                Ok(if neg { -r } else { r })
            }
            _ => Err(syn(self.here(), "expected exponent")),
        }
    }

    fn atom(&mut self) -> Result<Series, ExprError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Series::constant(Rat::from_integer(n))),
            Some(Tok::T) => Ok(Series::char_fn(int(1))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.expect(Tok::LParen)?;
                let arg = self.expr()?;
                self.expect(Tok::RParen)?;
                match name.as_str() {
                    "O" => match (arg.terms(), arg.trunc()) {
                        ([(g, c)], Trunc::Exact) if c.is_one() => {
                            Ok(Series::unknown_beyond(g.clone()))
                        }
                        _ => Err(ExprError::BadTruncationArgument),
                    },
                    "sqrt" => Ok(arg.sqrt(&self.order)?),
                    "A" => Ok(arg.automorphism_double()),
                    "A_inv" => Ok(arg.automorphism_halve()),
                    _ => Err(syn(pos, format!("unknown function {name}"))),
                }
            }
            _ => Err(syn(pos, "expected an atom")),
        }
    }
}

/// Working order when none is given: `OFL_DEFAULT_ORDER`, else 32.
pub fn default_order() -> Rat {
    std::env::var("OFL_DEFAULT_ORDER")
        .ok()
        .and_then(|s| crate::rat::parse_rat(&s))
        .unwrap_or_else(|| int(32))
}

/// Evaluates an expression at the given working order (used by division,
/// square roots, and negative powers).
pub fn eval(text: &str, order: &Rat) -> Result<Series, ExprError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        order: order.clone(),
        end: text.len(),
    };
    let result = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(syn(p.here(), "trailing input"));
    }
    Ok(result)
}
