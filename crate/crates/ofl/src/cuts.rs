//! Cuts and gaps of the rationals.
//!
//! A cut is a downward-closed set of rationals. The interesting ones here
//! are gaps: cuts with no least upper bound. They come in three flavors:
//! algebraic (everything below a fixed real algebraic number), induced by a
//! function Cauchy at infinity (the set of values cofinally dominated by
//! the function), and translations of either.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebraic::{AlgebraicError, AlgebraicNumber};
use crate::poly::{IntPoly, PolyError};
use crate::rat::Rat;

#[derive(Debug, Error)]
pub enum CutError {
    #[error("membership undecided at horizon {0}")]
    HorizonExhausted(u32),
    #[error("bisection budget of {0} steps exhausted")]
    BudgetExhausted(u32),
    #[error("no member/non-member bracket found")]
    NoBracket,
    #[error("operation requires an algebraic cut")]
    NotAlgebraic,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Algebraic(#[from] AlgebraicError),
}

/// Handle to a pure, total function of one rational variable.
pub type RatFn = Arc<dyn Fn(&Rat) -> Rat + Send + Sync>;

/// A cut of the rationals, given by a membership oracle.
#[derive(Clone)]
pub enum CutSpec {
    /// `{ q : q < r }` for a real algebraic `r`.
    Algebraic { r: AlgebraicNumber },
    /// `{ z : for every t there is x >= t with z <= f(x) }`, evaluated over
    /// the sample schedule `t, x in {1..horizon}` and decided only when the
    /// answer is stable across the last quarter of the horizon.
    Function { f: RatFn, horizon: u32 },
    /// `base + shift`.
    Translated { base: Box<CutSpec>, shift: Rat },
}

/// Certificate that `C + epsilon` is not contained in `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityWitness {
    pub epsilon: Rat,
    pub x: Rat,
}

impl CutSpec {
    pub fn algebraic(r: AlgebraicNumber) -> CutSpec {
        CutSpec::Algebraic { r }
    }

    pub fn function(f: RatFn, horizon: u32) -> CutSpec {
        CutSpec::Function { f, horizon }
    }

    /// Translates the cut by `shift`; membership is shifted exactly.
    pub fn translate(self, shift: Rat) -> CutSpec {
        CutSpec::Translated {
            base: Box::new(self),
            shift,
        }
    }

    pub fn contains(&self, q: &Rat) -> Result<bool, CutError> {
        match self {
            CutSpec::Algebraic { r } => Ok(r.cmp_rat(q) == Ordering::Greater),
            CutSpec::Translated { base, shift } => base.contains(&(q - shift)),
            CutSpec::Function { f, horizon } => {
                let h = (*horizon).max(4);
                let values: Vec<Rat> = (1..=h)
                    .map(|x| f(&Rat::from_integer(BigInt::from(x))))
                    .collect();
                // suffix maxima: e(t) = (q <= max values[t..])
                let mut sufmax = values.clone();
                for i in (0..sufmax.len() - 1).rev() {
                    if sufmax[i + 1] > sufmax[i] {
                        sufmax[i] = sufmax[i + 1].clone();
                    }
                }
                let e = |t: usize| *q <= sufmax[t - 1];
                // e is nonincreasing in t; decide by the last quarter
                let quarter_start = (h - h / 4).max(1) as usize;
                if e(h as usize) {
                    Ok(true)
                } else if !e(quarter_start) {
                    Ok(false)
                } else {
                    Err(CutError::HorizonExhausted(h))
                }
            }
        }
    }

    /// Does the cut lack a least upper bound? Defined for algebraic cuts
    /// (and their translations): true exactly when the location is
    /// irrational.
    pub fn is_gap(&self) -> Result<bool, CutError> {
        match self {
            CutSpec::Algebraic { r } => Ok(r.as_rational().is_none()),
            CutSpec::Translated { base, .. } => base.is_gap(),
            CutSpec::Function { .. } => Err(CutError::NotAlgebraic),
        }
    }

    /// Default bisection seeds: a known member and a known non-member.
    fn default_seeds(&self) -> Result<(Rat, Rat), CutError> {
        match self {
            CutSpec::Algebraic { r } => {
                let (lo, hi) = r.interval();
                let one = Rat::from_integer(BigInt::from(1));
                // endpoints of the isolating interval, pushed outward when
                // the interval is degenerate
                Ok((lo - &one, hi + &one))
            }
            CutSpec::Translated { base, shift } => {
                let (m, n) = base.default_seeds()?;
                Ok((m + shift, n + shift))
            }
            CutSpec::Function { f, .. } => {
                let at_one = f(&Rat::from_integer(BigInt::from(1)));
                let mut width = Rat::from_integer(BigInt::from(1));
                for _ in 0..64 {
                    let m = &at_one - &width;
                    let n = &at_one + &width;
                    if self.contains(&m)? && !self.contains(&n)? {
                        return Ok((m, n));
                    }
                    width = width * Rat::from_integer(BigInt::from(2));
                }
                Err(CutError::NoBracket)
            }
        }
    }

    /// Finds `x` in the cut with `x + epsilon` outside it, certifying that
    /// the cut translated by `epsilon` is not contained in itself.
    pub fn regularity_probe(
        &self,
        epsilon: &Rat,
        budget: u32,
    ) -> Result<RegularityWitness, CutError> {
        assert!(epsilon.is_positive(), "epsilon must be positive");
        let (m, n) = self.bracket(epsilon, budget)?;
        debug_assert!(&n - &m <= *epsilon);
        let x = m;
        if self.contains(&x)? && !self.contains(&(&x + epsilon))? {
            Ok(RegularityWitness {
                epsilon: epsilon.clone(),
                x,
            })
        } else {
            Err(CutError::NoBracket)
        }
    }

    /// Brackets the supremum: returns `(m, M)` with `m` in the cut, `M`
    /// outside it, and `M - m <= tol`.
    pub fn sup_approx(&self, tol: &Rat, budget: u32) -> Result<(Rat, Rat), CutError> {
        assert!(tol.is_positive(), "tolerance must be positive");
        self.bracket(tol, budget)
    }

    fn bracket(&self, tol: &Rat, budget: u32) -> Result<(Rat, Rat), CutError> {
        let (mut m, mut n) = self.default_seeds()?;
        if !self.contains(&m)? || self.contains(&n)? {
            return Err(CutError::NoBracket);
        }
        let two = Rat::from_integer(BigInt::from(2));
        let mut steps = 0u32;
        while &n - &m > *tol {
            if steps >= budget {
                return Err(CutError::BudgetExhausted(budget));
            }
            steps += 1;
            let mid = (&m + &n) / &two;
            if self.contains(&mid)? {
                m = mid;
            } else {
                n = mid;
            }
        }
        Ok((m, n))
    }
}

impl fmt::Debug for CutSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutSpec::Algebraic { r } => write!(f, "Algebraic({r})"),
            CutSpec::Function { horizon, .. } => write!(f, "Function(horizon={horizon})"),
            CutSpec::Translated { base, shift } => {
                write!(f, "Translated({base:?}, shift={shift})")
            }
        }
    }
}

/// The `n`-th continued-fraction convergent of sqrt(2): 1, 3/2, 7/5, 17/12...
pub fn sqrt2_convergent(n: u32) -> Rat {
    let mut p = BigInt::from(1);
    let mut q = BigInt::from(1);
    for _ in 1..n.max(1) {
        let np = &p + BigInt::from(2) * &q;
        let nq = &p + &q;
        p = np;
        q = nq;
    }
    Rat::new(p, q)
}

/// The step function `x -> convergent(floor(x))`, Cauchy at infinity with
/// limit sqrt(2).
pub fn sqrt2_convergent_fn() -> RatFn {
    Arc::new(|x: &Rat| {
        let n = x.floor().to_integer().max(BigInt::from(1));
        let n = u32::try_from(&n % BigInt::from(1u64 << 31)).unwrap_or(1).max(1);
        sqrt2_convergent(n)
    })
}

/// Report for an intermediate-value failure probe of `p` on `[a, b]`.
#[derive(Debug, Clone)]
pub struct IvpReport {
    pub sign_a: i8,
    pub sign_b: i8,
    pub rational_roots_in_interval: Vec<Rat>,
}

impl IvpReport {
    /// Signs differ yet no rational root lies between: the intermediate
    /// value property fails over the rationals.
    pub fn witnesses_failure(&self) -> bool {
        self.sign_a != 0
            && self.sign_b != 0
            && self.sign_a != self.sign_b
            && self.rational_roots_in_interval.is_empty()
    }
}

impl fmt::Display for IvpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sign_a={}", self.sign_a)?;
        writeln!(f, "sign_b={}", self.sign_b)?;
        let roots: Vec<String> = self
            .rational_roots_in_interval
            .iter()
            .map(|r| crate::rat::format_rat(r))
            .collect();
        writeln!(f, "rational_roots={}", roots.join(","))?;
        write!(f, "ivp_failure={}", self.witnesses_failure())
    }
}

/// Examines `p` on `[a, b]`: endpoint signs and the rational roots inside.
pub fn ivp_failure_witness(p: &IntPoly, a: &Rat, b: &Rat) -> IvpReport {
    assert!(a < b, "need a < b");
    let s = |v: Rat| -> i8 {
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    };
    let roots = p
        .rational_roots()
        .into_iter()
        .filter(|r| a <= r && r <= b)
        .collect();
    IvpReport {
        sign_a: s(p.eval(a)),
        sign_b: s(p.eval(b)),
        rational_roots_in_interval: roots,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rat::{int, parse_rat, rat};

    fn sqrt2_cut() -> CutSpec {
        CutSpec::algebraic(AlgebraicNumber::sqrt2())
    }

    #[test]
    fn algebraic_membership() {
        let c = sqrt2_cut();
        assert!(c.contains(&rat(7, 5)).unwrap());
        assert!(!c.contains(&rat(3, 2)).unwrap());
        assert!(c.contains(&int(-100)).unwrap());
        assert!(!c.contains(&int(2)).unwrap());
    }

    #[test]
    fn gap_detection() {
        assert!(sqrt2_cut().is_gap().unwrap());
        let three = AlgebraicNumber::root_of(parse_poly("x - 3").unwrap(), 0).unwrap();
        assert!(!CutSpec::algebraic(three).is_gap().unwrap());
        let cbrt2 = AlgebraicNumber::root_of(parse_poly("x^3 - 2").unwrap(), 0).unwrap();
        assert!(CutSpec::algebraic(cbrt2).is_gap().unwrap());
    }

    #[test]
    fn convergents() {
        let expect = ["1", "3/2", "7/5", "17/12", "41/29"];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(sqrt2_convergent(i as u32 + 1), parse_rat(e).unwrap());
        }
    }

    #[test]
    fn function_cut_matches_algebraic() {
        let c = CutSpec::function(sqrt2_convergent_fn(), 50);
        assert!(c.contains(&rat(7, 5)).unwrap());
        assert!(!c.contains(&rat(3, 2)).unwrap());
        assert!(c.contains(&int(1)).unwrap());
        assert!(!c.contains(&int(2)).unwrap());
    }

    #[test]
    fn function_cut_undecided_near_limit() {
        // at a tiny horizon, probes hugging the limit stay undecided
        let c = CutSpec::function(sqrt2_convergent_fn(), 8);
        let just_above = rat(3, 2); // decidable
        assert!(!c.contains(&just_above).unwrap());
        // between convergent 8 and sqrt2: within the oscillation band
        let v8 = sqrt2_convergent(8);
        let sq2 = AlgebraicNumber::sqrt2();
        let probe = &v8 + rat(1, 100_000_000);
        if sq2.cmp_rat(&probe) == std::cmp::Ordering::Greater {
            assert!(matches!(
                c.contains(&probe),
                Err(CutError::HorizonExhausted(_)) | Ok(true)
            ));
        }
    }

    #[test]
    fn regularity_witnesses() {
        let c = sqrt2_cut();
        for eps in [int(1), rat(1, 1000)] {
            let w = c.regularity_probe(&eps, 256).unwrap();
            assert!(c.contains(&w.x).unwrap());
            assert!(!c.contains(&(&w.x + &w.epsilon)).unwrap());
        }
    }

    #[test]
    fn translation() {
        let c = sqrt2_cut().translate(int(10));
        let w = c.regularity_probe(&rat(1, 2), 256).unwrap();
        assert!(w.x > int(10)); // near sqrt2 + 10
        assert!(c.contains(&(&w.x)).unwrap());
        // shift then shift back
        let back = c.translate(int(-10));
        for q in [int(0), int(1), rat(7, 5), rat(3, 2), int(2)] {
            assert_eq!(
                back.contains(&q).unwrap(),
                sqrt2_cut().contains(&q).unwrap()
            );
        }
    }

    #[test]
    fn sup_bracket() {
        let c = sqrt2_cut();
        let tol = rat(1, 1_000_000);
        let (m, n) = c.sup_approx(&tol, 256).unwrap();
        assert!(&n - &m <= tol);
        assert!(&m * &m < int(2));
        assert!(&n * &n > int(2));
    }

    #[test]
    fn budget_exhaustion() {
        let c = sqrt2_cut();
        assert!(matches!(
            c.sup_approx(&rat(1, 1_000_000_000), 3),
            Err(CutError::BudgetExhausted(3))
        ));
    }

    #[test]
    fn ivp_reports() {
        let r = ivp_failure_witness(&parse_poly("x^2 - 2").unwrap(), &int(1), &int(2));
        assert_eq!((r.sign_a, r.sign_b), (-1, 1));
        assert!(r.rational_roots_in_interval.is_empty());
        assert!(r.witnesses_failure());

        let r = ivp_failure_witness(&parse_poly("x - 1").unwrap(), &int(0), &int(2));
        assert_eq!(r.rational_roots_in_interval, vec![int(1)]);
        assert!(!r.witnesses_failure());

        let r = ivp_failure_witness(&parse_poly("x^3 - 2").unwrap(), &int(1), &int(2));
        assert_eq!((r.sign_a, r.sign_b), (-1, 1));
        assert!(r.witnesses_failure());
    }
}
