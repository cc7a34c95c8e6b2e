//! Exact arithmetic in incomplete ordered fields.
//!
//! The crate implements, at desk scale, the objects that witness the failure
//! of Dedekind, monotone, and Scott completeness in ordered fields:
//!
//! * [`series`] — the generalized power series field with rational exponents
//!   and rational coefficients: Cauchy product, leading-term order, square
//!   roots, the exponent-doubling automorphism, and the infinite prime of the
//!   subring of series with no infinitesimal terms.
//! * [`cuts`] — cuts and gaps of the rationals: algebraic cuts located at
//!   real-algebraic numbers (decided by Sturm root counting), cuts induced by
//!   functions Cauchy at infinity, regularity witnesses, and translation.
//! * [`cex`] — explicit continuous pathological maps on rational intervals:
//!   an injective map sending an interior point to a boundary point of its
//!   image, an unbounded non-uniformly-continuous map with non-closed range,
//!   and an interior-to-interior map that is not open.
//! * [`scott`] — coefficientwise limits of functionals Cauchy at infinity on
//!   the truncated series field.
//!
//! Run `cargo run --example series_arithmetic` (and friends) for guided
//! tours, or use the `ofl` binary for one-shot computations.

pub mod algebraic;
pub mod cex;
pub mod cuts;
pub mod expr;
pub mod net;
pub mod poly;
pub mod quad;
pub mod rat;
pub mod scott;
pub mod series;

pub use algebraic::AlgebraicNumber;
pub use cex::{PiecewiseLinearMap, Segment};
pub use cuts::{CutSpec, RegularityWitness};
pub use poly::IntPoly;
pub use quad::Quad;
pub use rat::Rat;
pub use series::{ComparisonResult, Series, Trunc};
