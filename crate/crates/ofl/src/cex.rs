//! Pathological continuous piecewise-linear maps on rational intervals.
//!
//! Three constructions over the (Dedekind- and monotone-incomplete) field
//! of rationals:
//!
//! * [`PiecewiseLinearMap::theorem12`] — a continuous injection of `[a, b]`
//!   that sends the interior point `c` to a boundary point of its image.
//!   The interval is sliced along two nets converging to `c`, with slice
//!   boundaries placed at gaps of the form `p + q*sqrt(2)`; the slices
//!   below `c` inject affinely into even-indexed slices above `c`, the
//!   slices above `c` into odd-indexed ones, and `c` stays fixed.
//! * [`PiecewiseLinearMap::theorem21i`] — a continuous, non uniformly
//!   continuous, unbounded map whose range is not closed: slices
//!   accumulating at an interior gap are stretched onto `[n+1, n+2)`,
//!   slices above a second gap are flipped onto `[-1/(n+1), -1/(n+2))`,
//!   and the middle plateau maps to 1.
//! * [`PiecewiseLinearMap::theorem21ii`] — as the first map, except the
//!   topmost slice above `c` is mapped piecewise onto `[a, c)`, so the map
//!   sends interior points to interior points of the image yet fails to be
//!   open at `c`.
//!
//! Segments are materialized lazily as evaluation points demand them and
//! cached behind a mutex, so evaluation is logically pure and safe to call
//! concurrently.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::net::NetSpec;
use crate::quad::Quad;
use crate::rat::{format_rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("invalid interval: need a < c < b")]
    InvalidInterval,
    #[error("point {0} outside the map domain")]
    OutOfDomain(String),
    #[error("slice depth limit {0} exceeded")]
    DepthLimit(u64),
    #[error("degenerate interval for affine transport")]
    DegenerateInterval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Thm12,
    Thm21i,
    Thm21ii,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Thm12 => "thm12",
            MapKind::Thm21i => "thm21i",
            MapKind::Thm21ii => "thm21ii",
        })
    }
}

/// A slice endpoint: rational or a `p + q*sqrt(2)` gap point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Rational(Rat),
    Quadratic(Quad),
}

impl Bound {
    pub fn cmp_rat(&self, x: &Rat) -> Ordering {
        match self {
            Bound::Rational(r) => r.cmp(x),
            Bound::Quadratic(q) => q.cmp_rat(x),
        }
    }

}

/// One affine piece: an interval of the domain with the line mapped over it,
/// plus the slice of the codomain the image is committed to land in.
#[derive(Clone, Debug)]
pub struct Segment {
    pub source_lo: Bound,
    pub source_hi: Bound,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub slope: Rat,
    pub intercept: Rat,
    /// Rational interval certainly containing the image of the source slice.
    pub image_box: (Rat, Rat),
    /// Assigned target slice; image_box must sit inside it.
    pub target_lo: Bound,
    pub target_hi: Bound,
    pub target_lo_closed: bool,
    pub target_hi_closed: bool,
}

impl Segment {
    pub fn eval(&self, x: &Rat) -> Rat {
        &self.slope * x + &self.intercept
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let lo = match self.source_lo.cmp_rat(x) {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        let hi = match self.source_hi.cmp_rat(x) {
            Ordering::Greater => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Less => false,
        };
        lo && hi
    }

    /// Exact check that the committed image box sits inside the assigned
    /// target slice.
    pub fn image_in_target(&self) -> bool {
        let (lo, hi) = &self.image_box;
        let lo_ok = match self.target_lo.cmp_rat(lo) {
            Ordering::Less => true,
            Ordering::Equal => self.target_lo_closed,
            Ordering::Greater => false,
        };
        let hi_ok = match self.target_hi.cmp_rat(hi) {
            Ordering::Greater => true,
            Ordering::Equal => self.target_hi_closed,
            Ordering::Less => false,
        };
        lo_ok && hi_ok
    }
}

/// Affine map sending `a1 -> b1` and `a2 -> b2`, as a segment over
/// `[min(a1,a2), max(a1,a2)]`.
pub fn affine_transport(a1: &Rat, a2: &Rat, b1: &Rat, b2: &Rat) -> Result<Segment, MapError> {
    if a1 == a2 || b1 == b2 {
        return Err(MapError::DegenerateInterval);
    }
    let slope = (b2 - b1) / (a2 - a1);
    let intercept = b1 - &slope * a1;
    let (slo, shi) = if a1 < a2 { (a1, a2) } else { (a2, a1) };
    let (ilo, ihi) = if b1 < b2 { (b1, b2) } else { (b2, b1) };
    Ok(Segment {
        source_lo: Bound::Rational(slo.clone()),
        source_hi: Bound::Rational(shi.clone()),
        lo_closed: true,
        hi_closed: true,
        slope,
        intercept,
        image_box: (ilo.clone(), ihi.clone()),
        target_lo: Bound::Rational(ilo.clone()),
        target_hi: Bound::Rational(ihi.clone()),
        target_lo_closed: true,
        target_hi_closed: true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum SliceId {
    /// slice below c (thm12/thm21ii), index n
    S(u64),
    /// slice above c, index n
    T(u64),
    /// piece of the topmost slice mapped onto [a, c) (thm21ii)
    T0Piece(u64),
    /// slice accumulating at the lower gap (thm21i)
    A(u64),
    /// slice accumulating at the upper gap from above (thm21i)
    B(u64),
}

enum Inner {
    /// thm12 and thm21ii share the slice geometry around `c`.
    Boundary {
        a: Rat,
        b: Rat,
        c: Rat,
        a_net: NetSpec,
        b_net: NetSpec,
        /// thm21ii: map T0 onto [a, c) instead of injecting it upward
        t0_onto_left: bool,
        /// decreasing net from b to the gap point v0 (thm21ii only)
        e_net: Option<NetSpec>,
    },
    Unbounded {
        a: Rat,
        b: Rat,
        theta1: Quad,
        theta2: Quad,
        a_net: NetSpec,
        b_net: NetSpec,
    },
}

pub struct PiecewiseLinearMap {
    kind: MapKind,
    inner: Inner,
    depth_limit: u64,
    cache: Mutex<BTreeMap<SliceId, Segment>>,
}

const DEFAULT_DEPTH_LIMIT: u64 = 1_000_000;

impl PiecewiseLinearMap {
    /// Continuous injection of `[a, b]` fixing `c` and sending every other
    /// point strictly above `c`: the interior point `c` becomes a boundary
    /// point of the image.
    pub fn theorem12(a: Rat, b: Rat, c: Rat) -> Result<PiecewiseLinearMap, MapError> {
        if !(a < c && c < b) {
            return Err(MapError::InvalidInterval);
        }
        Ok(PiecewiseLinearMap {
            kind: MapKind::Thm12,
            inner: Inner::Boundary {
                a_net: NetSpec::halving(c.clone(), a.clone()),
                b_net: NetSpec::halving(c.clone(), b.clone()),
                a,
                b,
                c,
                t0_onto_left: false,
                e_net: None,
            },
            depth_limit: DEFAULT_DEPTH_LIMIT,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    /// Continuous unbounded map on `[a, b]`, not uniformly continuous, with
    /// a range accumulating at 0 without attaining it.
    pub fn theorem21i(a: Rat, b: Rat) -> Result<PiecewiseLinearMap, MapError> {
        if a >= b {
            return Err(MapError::InvalidInterval);
        }
        let width = &b - &a;
        let half = &width / Rat::from_integer(BigInt::from(2));
        // theta1 = a + (b-a)(1 - sqrt2/2), theta2 = a + (b-a) sqrt2/2
        let theta1 = Quad::new(&a + &width, -half.clone());
        let theta2 = Quad::new(a.clone(), half);
        Ok(PiecewiseLinearMap {
            kind: MapKind::Thm21i,
            inner: Inner::Unbounded {
                a_net: NetSpec::dyadic(theta1.clone(), a.clone()),
                b_net: NetSpec::dyadic(theta2.clone(), b.clone()),
                a,
                b,
                theta1,
                theta2,
            },
            depth_limit: DEFAULT_DEPTH_LIMIT,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    /// Variant of the first map whose topmost slice is spread over `[a, c)`:
    /// every interior point maps to an interior point of the image, yet the
    /// image of `(a1, b1)` has `c` on its boundary, so the map is not open.
    pub fn theorem21ii(a: Rat, b: Rat, c: Rat) -> Result<PiecewiseLinearMap, MapError> {
        if !(a < c && c < b) {
            return Err(MapError::InvalidInterval);
        }
        let b_net = NetSpec::halving(c.clone(), b.clone());
        let b0 = b_net.term(0);
        let b1 = b_net.term(1);
        // v0 = b1 + (b0 - b1) sqrt2/2
        let v0 = Quad::new(b1.clone(), (&b0 - &b1) / Rat::from_integer(BigInt::from(2)));
        let e_net = NetSpec::dyadic(v0, b0.clone());
        Ok(PiecewiseLinearMap {
            kind: MapKind::Thm21ii,
            inner: Inner::Boundary {
                a_net: NetSpec::halving(c.clone(), a.clone()),
                b_net,
                a,
                b: b0,
                c,
                t0_onto_left: true,
                e_net: Some(e_net),
            },
            depth_limit: DEFAULT_DEPTH_LIMIT,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn domain(&self) -> (Rat, Rat) {
        match &self.inner {
            Inner::Boundary { a, b, .. } => (a.clone(), b.clone()),
            Inner::Unbounded { a, b, .. } => (a.clone(), b.clone()),
        }
    }

    pub fn fixed_point(&self) -> Option<Rat> {
        match &self.inner {
            Inner::Boundary { c, .. } => Some(c.clone()),
            Inner::Unbounded { .. } => None,
        }
    }

    pub fn set_depth_limit(&mut self, limit: u64) {
        self.depth_limit = limit;
    }

    /// Evaluates the map, deepening the segment cache as needed.
    pub fn eval(&self, x: &Rat) -> Result<Rat, MapError> {
        let (a, b) = self.domain();
        if *x < a || *x > b {
            return Err(MapError::OutOfDomain(format_rat(x)));
        }
        match &self.inner {
            Inner::Boundary { c, .. } => {
                if x == c {
                    return Ok(c.clone());
                }
                let id = self.locate_boundary(x)?;
                let seg = self.segment(id);
                debug_assert!(seg.contains(x), "slice {id:?} must contain {x}");
                Ok(seg.eval(x))
            }
            Inner::Unbounded {
                theta1, theta2, ..
            } => {
                if theta1.cmp_rat(x) == Ordering::Greater {
                    let id = self.locate_unbounded_low(x)?;
                    let seg = self.segment(id);
                    debug_assert!(seg.contains(x));
                    Ok(seg.eval(x))
                } else if theta2.cmp_rat(x) == Ordering::Less {
                    let id = self.locate_unbounded_high(x)?;
                    let seg = self.segment(id);
                    debug_assert!(seg.contains(x));
                    Ok(seg.eval(x))
                } else {
                    // plateau between the two gaps
                    Ok(Rat::one())
                }
            }
        }
    }

    /// Smallest index with `pred(n)` true, for a monotone predicate, found
    /// by exponential then binary search.
    fn first_index(
        &self,
        pred: impl Fn(u64) -> bool,
    ) -> Result<u64, MapError> {
        if pred(0) {
            return Ok(0);
        }
        let mut hi = 1u64;
        while !pred(hi) {
            if hi > self.depth_limit {
                return Err(MapError::DepthLimit(self.depth_limit));
            }
            hi *= 2;
        }
        let mut lo = hi / 2; // pred(lo) false
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if pred(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    fn locate_boundary(&self, x: &Rat) -> Result<SliceId, MapError> {
        let Inner::Boundary {
            c, t0_onto_left, ..
        } = &self.inner
        else {
            unreachable!()
        };
        if x < c {
            // first n with u(n) > x
            let n = self.first_index(|n| self.gap_u(n).cmp_rat(x) == Ordering::Greater)?;
            Ok(SliceId::S(n))
        } else {
            // first n with v(n) < x
            let n = self.first_index(|n| self.gap_v(n).cmp_rat(x) == Ordering::Less)?;
            if n == 0 && *t0_onto_left {
                // inside T0: first j with e(j) < x, piece j-1
                let Inner::Boundary { e_net, .. } = &self.inner else {
                    unreachable!()
                };
                let e_net = e_net.as_ref().unwrap();
                let j = self.first_index(|j| e_net.term(j) < *x)?;
                debug_assert!(j >= 1);
                Ok(SliceId::T0Piece(j - 1))
            } else {
                Ok(SliceId::T(n))
            }
        }
    }

    fn locate_unbounded_low(&self, x: &Rat) -> Result<SliceId, MapError> {
        let Inner::Unbounded { a_net, .. } = &self.inner else {
            unreachable!()
        };
        let j = self.first_index(|j| a_net.term(j) > *x)?;
        debug_assert!(j >= 1);
        Ok(SliceId::A(j - 1))
    }

    fn locate_unbounded_high(&self, x: &Rat) -> Result<SliceId, MapError> {
        let Inner::Unbounded { b_net, .. } = &self.inner else {
            unreachable!()
        };
        let j = self.first_index(|j| b_net.term(j) < *x)?;
        debug_assert!(j >= 1);
        Ok(SliceId::B(j - 1))
    }

    /// Gap point `u(n) = a_n + (a_{n+1} - a_n) sqrt2/2` inside `(a_n, a_{n+1})`.
    fn gap_u(&self, n: u64) -> Quad {
        let Inner::Boundary { a_net, .. } = &self.inner else {
            unreachable!()
        };
        let an = a_net.term(n);
        let an1 = a_net.term(n + 1);
        Quad::new(an.clone(), (&an1 - &an) / Rat::from_integer(BigInt::from(2)))
    }

    /// Gap point `v(n) = b_{n+1} + (b_n - b_{n+1}) sqrt2/2` inside `(b_{n+1}, b_n)`.
    fn gap_v(&self, n: u64) -> Quad {
        let Inner::Boundary { b_net, .. } = &self.inner else {
            unreachable!()
        };
        let bn = b_net.term(n);
        let bn1 = b_net.term(n + 1);
        Quad::new(
            bn1.clone(),
            (&bn - &bn1) / Rat::from_integer(BigInt::from(2)),
        )
    }

    /// Source slice below `c`: `S_0 = [a, u_0)`, `S_{n+1} = (u_n, u_{n+1})`.
    fn s_slice(&self, n: u64) -> (Bound, Bound, bool, bool) {
        let Inner::Boundary { a, .. } = &self.inner else {
            unreachable!()
        };
        if n == 0 {
            (
                Bound::Rational(a.clone()),
                Bound::Quadratic(self.gap_u(0)),
                true,
                false,
            )
        } else {
            (
                Bound::Quadratic(self.gap_u(n - 1)),
                Bound::Quadratic(self.gap_u(n)),
                false,
                false,
            )
        }
    }

    /// Source slice above `c`: `T_0 = (v_0, b]`, `T_{n+1} = (v_{n+1}, v_n)`.
    fn t_slice(&self, n: u64) -> (Bound, Bound, bool, bool) {
        let Inner::Boundary { b, .. } = &self.inner else {
            unreachable!()
        };
        if n == 0 {
            (
                Bound::Quadratic(self.gap_v(0)),
                Bound::Rational(b.clone()),
                false,
                true,
            )
        } else {
            (
                Bound::Quadratic(self.gap_v(n)),
                Bound::Quadratic(self.gap_v(n - 1)),
                false,
                false,
            )
        }
    }

    /// Rational bounding box of the slice the segment reads from.
    fn s_source_box(&self, n: u64) -> (Rat, Rat) {
        let Inner::Boundary { a_net, .. } = &self.inner else {
            unreachable!()
        };
        if n == 0 {
            (a_net.term(0), a_net.term(1))
        } else {
            (a_net.term(n - 1), a_net.term(n + 1))
        }
    }

    fn t_source_box(&self, n: u64) -> (Rat, Rat) {
        let Inner::Boundary { b_net, .. } = &self.inner else {
            unreachable!()
        };
        if n == 0 {
            (b_net.term(1), b_net.term(0))
        } else {
            (b_net.term(n + 1), b_net.term(n - 1))
        }
    }

    /// Rational box strictly inside the target slice `T_k`, found by
    /// refining dyadic bounds on the gap endpoints.
    fn target_box(&self, k: u64) -> (Rat, Rat) {
        let Inner::Boundary { b, .. } = &self.inner else {
            unreachable!()
        };
        let mut prec: u32 = u32::try_from(k).unwrap_or(u32::MAX - 64) + 8;
        if k == 0 {
            let v0 = self.gap_v(0);
            loop {
                let (_, p) = v0.bounds(prec);
                if p < *b {
                    let q = &p + (b - &p) / Rat::from_integer(BigInt::from(2));
                    return (p, q);
                }
                prec *= 2;
            }
        }
        let vk = self.gap_v(k);
        let vk1 = self.gap_v(k - 1);
        loop {
            let (_, p) = vk.bounds(prec);
            let (q, _) = vk1.bounds(prec);
            if p < q {
                return (p, q);
            }
            prec *= 2;
        }
    }

    fn segment(&self, id: SliceId) -> Segment {
        if let Some(seg) = self.cache.lock().unwrap().get(&id) {
            return seg.clone();
        }
        let seg = self.build_segment(id);
        self.cache
            .lock()
            .unwrap()
            .entry(id)
            .or_insert(seg)
            .clone()
    }

    fn build_segment(&self, id: SliceId) -> Segment {
        match id {
            SliceId::S(n) => {
                let (lo, hi, lc, hc) = self.s_slice(n);
                let (s1, s2) = self.s_source_box(n);
                let target = 2 * n;
                let (d1, d2) = self.target_box(target);
                let base = affine_transport(&s1, &s2, &d1, &d2).unwrap();
                let (tlo, thi, tlc, thc) = self.t_slice(target);
                Segment {
                    source_lo: lo,
                    source_hi: hi,
                    lo_closed: lc,
                    hi_closed: hc,
                    slope: base.slope,
                    intercept: base.intercept,
                    image_box: (d1, d2),
                    target_lo: tlo,
                    target_hi: thi,
                    target_lo_closed: tlc,
                    target_hi_closed: thc,
                }
            }
            SliceId::T(n) => {
                let (lo, hi, lc, hc) = self.t_slice(n);
                let (s1, s2) = self.t_source_box(n);
                let target = 2 * n + 1;
                let (d1, d2) = self.target_box(target);
                let base = affine_transport(&s1, &s2, &d1, &d2).unwrap();
                let (tlo, thi, tlc, thc) = self.t_slice(target);
                Segment {
                    source_lo: lo,
                    source_hi: hi,
                    lo_closed: lc,
                    hi_closed: hc,
                    slope: base.slope,
                    intercept: base.intercept,
                    image_box: (d1, d2),
                    target_lo: tlo,
                    target_hi: thi,
                    target_lo_closed: tlc,
                    target_hi_closed: thc,
                }
            }
            SliceId::T0Piece(m) => {
                let Inner::Boundary {
                    a_net, e_net, ..
                } = &self.inner
                else {
                    unreachable!()
                };
                let e_net = e_net.as_ref().unwrap();
                let em = e_net.term(m);
                let em1 = e_net.term(m + 1);
                let cm = a_net.term(m);
                let cm1 = a_net.term(m + 1);
                // decreasing: e_m -> c_m, e_{m+1} -> c_{m+1}
                let slope = (&cm1 - &cm) / (&em1 - &em);
                let intercept = &cm - &slope * &em;
                Segment {
                    source_lo: Bound::Rational(em1),
                    source_hi: Bound::Rational(em.clone()),
                    lo_closed: false,
                    hi_closed: true,
                    slope,
                    intercept,
                    image_box: (cm.clone(), cm1.clone()),
                    target_lo: Bound::Rational(cm),
                    target_hi: Bound::Rational(cm1),
                    target_lo_closed: true,
                    target_hi_closed: true,
                }
            }
            SliceId::A(n) => {
                let Inner::Unbounded { a_net, .. } = &self.inner else {
                    unreachable!()
                };
                let an = a_net.term(n);
                let an1 = a_net.term(n + 1);
                let u0 = Rat::from_integer(BigInt::from(n + 1));
                let u1 = Rat::from_integer(BigInt::from(n + 2));
                let slope = (&u1 - &u0) / (&an1 - &an);
                let intercept = &u0 - &slope * &an;
                Segment {
                    source_lo: Bound::Rational(an),
                    source_hi: Bound::Rational(an1),
                    lo_closed: true,
                    hi_closed: false,
                    slope,
                    intercept,
                    image_box: (u0.clone(), u1.clone()),
                    target_lo: Bound::Rational(u0),
                    target_hi: Bound::Rational(u1),
                    target_lo_closed: true,
                    target_hi_closed: true,
                }
            }
            SliceId::B(n) => {
                let Inner::Unbounded { b_net, .. } = &self.inner else {
                    unreachable!()
                };
                let bn = b_net.term(n);
                let bn1 = b_net.term(n + 1);
                let d0 = -Rat::new(BigInt::one(), BigInt::from(n + 1));
                let d1 = -Rat::new(BigInt::one(), BigInt::from(n + 2));
                // decreasing: b_n -> d_n, b_{n+1} -> d_{n+1}
                let slope = (&d1 - &d0) / (&bn1 - &bn);
                let intercept = &d0 - &slope * &bn;
                Segment {
                    source_lo: Bound::Rational(bn1),
                    source_hi: Bound::Rational(bn),
                    lo_closed: false,
                    hi_closed: true,
                    slope,
                    intercept,
                    image_box: (d0.clone(), d1.clone()),
                    target_lo: Bound::Rational(d0),
                    target_hi: Bound::Rational(d1),
                    target_lo_closed: true,
                    target_hi_closed: true,
                }
            }
        }
    }

    /// Every segment materialized so far.
    pub fn materialized_segments(&self) -> Vec<Segment> {
        self.cache.lock().unwrap().values().cloned().collect()
    }

    /// Re-checks, exactly, that every materialized segment's image box sits
    /// inside its assigned target slice.
    pub fn verify_segment_images(&self) -> bool {
        self.materialized_segments()
            .iter()
            .all(|s| s.image_in_target())
    }

    /// Materializes the segment covering `x` (or the fixed point / plateau
    /// value, returned without a segment).
    pub fn segment_at(&self, x: &Rat) -> Result<Option<Segment>, MapError> {
        let (a, b) = self.domain();
        if *x < a || *x > b {
            return Err(MapError::OutOfDomain(format_rat(x)));
        }
        match &self.inner {
            Inner::Boundary { c, .. } => {
                if x == c {
                    return Ok(None);
                }
                let id = self.locate_boundary(x)?;
                Ok(Some(self.segment(id)))
            }
            Inner::Unbounded {
                theta1, theta2, ..
            } => {
                if theta1.cmp_rat(x) == Ordering::Greater {
                    Ok(Some(self.segment(self.locate_unbounded_low(x)?)))
                } else if theta2.cmp_rat(x) == Ordering::Less {
                    Ok(Some(self.segment(self.locate_unbounded_high(x)?)))
                } else {
                    Ok(None)
                }
            }
        }
    }

    /// Net accessors used by probes: the increasing net below the lower
    /// accumulation point and the decreasing net above the upper one.
    pub fn lower_net(&self) -> &NetSpec {
        match &self.inner {
            Inner::Boundary { a_net, .. } => a_net,
            Inner::Unbounded { a_net, .. } => a_net,
        }
    }

    pub fn upper_net(&self) -> &NetSpec {
        match &self.inner {
            Inner::Boundary { b_net, .. } => b_net,
            Inner::Unbounded { b_net, .. } => b_net,
        }
    }
}

/// Deterministic dyadic sample points in the map's domain.
pub fn sample_domain(m: &PiecewiseLinearMap, samples: u64, seed: u64) -> Vec<Rat> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = m.domain();
    let width = &b - &a;
    let denom = Rat::from_integer(BigInt::from(1u64 << 32));
    let mut out = Vec::with_capacity(samples as usize);
    for _ in 0..samples {
        let k: u32 = rng.gen();
        out.push(&a + &width * Rat::from_integer(BigInt::from(k)) / &denom);
    }
    out
}

/// Probe results for the advertised pathologies of each map kind.
#[derive(Clone, Debug)]
pub struct PathologyReport {
    pub kind: MapKind,
    pub samples: u64,
    /// thm12: distinct inputs mapping to equal values (must be 0).
    pub collisions: Option<u64>,
    pub fixed_point_ok: Option<bool>,
    pub min_image: Option<Rat>,
    /// thm12: every sampled image of x != c lies strictly above c.
    pub all_images_above_c: Option<bool>,
    /// thm21ii: sampled images of (a1, b1) never fall below c.
    pub no_image_below_c: Option<bool>,
    pub segment_images_in_slices: bool,
    /// thm21i: per k = 1..=20, a pair within 2^-k whose values differ by >= 1.
    pub delta_witnesses: Vec<(u32, Rat, Rat, Rat)>,
    pub unbounded_witness: Option<(Rat, Rat)>,
    /// thm21i: slice index whose image interval sits within 10^-6 of 0.
    pub near_zero_slice: Option<(u64, Rat)>,
    /// thm21i: no segment image interval contains 0 (checked symbolically).
    pub zero_attained: Option<bool>,
    /// thm21ii: (samples drawn from T0, how many landed in [a, c)).
    pub t0_samples: Option<(u64, u64)>,
}

impl fmt::Display for PathologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind={}", self.kind)?;
        writeln!(f, "samples={}", self.samples)?;
        if let Some(v) = self.collisions {
            writeln!(f, "collisions={v}")?;
        }
        if let Some(v) = self.fixed_point_ok {
            writeln!(f, "fixed_point_ok={v}")?;
        }
        if let Some(v) = &self.min_image {
            writeln!(f, "min_image={}", format_rat(v))?;
        }
        if let Some(v) = self.all_images_above_c {
            writeln!(f, "all_images_above_c={v}")?;
        }
        if let Some(v) = self.no_image_below_c {
            writeln!(f, "no_image_below_c={v}")?;
        }
        writeln!(
            f,
            "segment_images_in_slices={}",
            self.segment_images_in_slices
        )?;
        for (k, x1, x2, gap) in &self.delta_witnesses {
            writeln!(
                f,
                "delta_witness[2^-{k}]={},{},gap={}",
                format_rat(x1),
                format_rat(x2),
                format_rat(gap)
            )?;
        }
        if let Some((x, y)) = &self.unbounded_witness {
            // deep net terms have enormous exact numerators; a decimal is
            // all a report reader needs to relocate the witness
            writeln!(
                f,
                "unbounded_witness_x={}",
                crate::rat::format_decimal(x, 20)
            )?;
            writeln!(f, "unbounded_witness_f={}", format_rat(y))?;
        }
        if let Some((n, v)) = &self.near_zero_slice {
            writeln!(f, "near_zero_slice={n},{}", format_rat(v))?;
        }
        if let Some(v) = self.zero_attained {
            writeln!(f, "zero_attained={v}")?;
        }
        if let Some((total, hit)) = self.t0_samples {
            writeln!(f, "t0_samples={total},in_left={hit}")?;
        }
        Ok(())
    }
}

impl PiecewiseLinearMap {
    pub fn probe_pathologies(&self, samples: u64, seed: u64) -> Result<PathologyReport, MapError> {
        let mut report = PathologyReport {
            kind: self.kind,
            samples,
            collisions: None,
            fixed_point_ok: None,
            min_image: None,
            all_images_above_c: None,
            no_image_below_c: None,
            segment_images_in_slices: true,
            delta_witnesses: Vec::new(),
            unbounded_witness: None,
            near_zero_slice: None,
            zero_attained: None,
            t0_samples: None,
        };
        match self.kind {
            MapKind::Thm12 => self.probe_thm12(samples, seed, &mut report)?,
            MapKind::Thm21i => self.probe_thm21i(samples, seed, &mut report)?,
            MapKind::Thm21ii => self.probe_thm21ii(samples, seed, &mut report)?,
        }
        report.segment_images_in_slices = self.verify_segment_images();
        Ok(report)
    }

    fn probe_thm12(
        &self,
        samples: u64,
        seed: u64,
        report: &mut PathologyReport,
    ) -> Result<(), MapError> {
        let c = self.fixed_point().unwrap();
        let xs: std::collections::BTreeSet<Rat> =
            sample_domain(self, samples, seed).into_iter().collect();
        let mut images = std::collections::BTreeSet::new();
        let mut min_image: Option<Rat> = None;
        let mut all_above = true;
        for x in &xs {
            let y = self.eval(x)?;
            if *x != c {
                if y <= c {
                    all_above = false;
                }
                if min_image.as_ref().map_or(true, |m| y < *m) {
                    min_image = Some(y.clone());
                }
            }
            images.insert(y);
        }
        report.collisions = Some((xs.len() - images.len()) as u64);
        report.fixed_point_ok = Some(self.eval(&c)? == c);
        report.min_image = min_image;
        report.all_images_above_c = Some(all_above);
        Ok(())
    }

    fn probe_thm21i(
        &self,
        samples: u64,
        seed: u64,
        report: &mut PathologyReport,
    ) -> Result<(), MapError> {
        // exercise evaluation across the domain
        let mut min_image: Option<Rat> = None;
        for x in sample_domain(self, samples, seed) {
            let y = self.eval(&x)?;
            if min_image.as_ref().map_or(true, |m| y < *m) {
                min_image = Some(y);
            }
        }
        report.min_image = min_image;
        // non-uniform continuity: consecutive lower-net terms within each
        // delta still produce a unit value jump
        let a_net = self.lower_net();
        for k in 1..=20u32 {
            let delta = crate::rat::pow2(-(k as i64));
            let mut n = 0u64;
            loop {
                let an = a_net.term(n);
                let an1 = a_net.term(n + 1);
                if &an1 - &an < delta {
                    let gap = self.eval(&an1)? - self.eval(&an)?;
                    debug_assert!(gap >= Rat::one());
                    report.delta_witnesses.push((k, an, an1, gap));
                    break;
                }
                n += 1;
                assert!(n < 64 + 4 * k as u64, "dyadic widths must shrink");
            }
        }
        // unboundedness: a point in slice 1001 maps to 1002 > 1000
        let x = a_net.term(1001);
        let y = self.eval(&x)?;
        report.unbounded_witness = Some((x, y));
        // range accumulates at 0: slice n has image [-1/(n+1), -1/(n+2)),
        // nonempty since the upper net is strictly decreasing
        let n = 999_999u64;
        report.near_zero_slice = Some((n, -Rat::new(BigInt::one(), BigInt::from(n + 1))));
        // but never attains it: every image interval is {1}, [n+1, n+2), or
        // [-1/(n+1), -1/(n+2)) with -1/(n+2) < 0; check the materialized
        // segment boxes exactly
        let zero = Rat::zero();
        let attained = self.materialized_segments().iter().any(|s| {
            let (lo, hi) = &s.image_box;
            *lo <= zero && zero < *hi
        });
        report.zero_attained = Some(attained);
        Ok(())
    }

    fn probe_thm21ii(
        &self,
        samples: u64,
        seed: u64,
        report: &mut PathologyReport,
    ) -> Result<(), MapError> {
        use rand::{Rng, SeedableRng};
        let c = self.fixed_point().unwrap();
        let (a, _) = self.domain();
        let a1 = self.lower_net().term(1);
        let b1 = self.upper_net().term(1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let denom = Rat::from_integer(BigInt::from(1u64 << 32));
        let width = &b1 - &a1;
        let mut no_below = true;
        let mut min_image: Option<Rat> = None;
        for _ in 0..samples {
            let k: u32 = rng.gen();
            let x = &a1 + &width * Rat::from_integer(BigInt::from(k)) / &denom;
            let y = self.eval(&x)?;
            if y < c || (y == c && x != c) {
                no_below = false;
            }
            if min_image.as_ref().map_or(true, |m| y < *m) {
                min_image = Some(y);
            }
        }
        report.no_image_below_c = Some(no_below);
        report.min_image = min_image;
        report.fixed_point_ok = Some(self.eval(&c)? == c);
        // T0 = (v0, b]: its points must land in [a, c)
        let (_, b) = self.domain();
        let v0 = self.gap_v(0);
        let (_, p) = v0.bounds(24); // rational just above v0
        let t0_width = &b - &p;
        let t0_total = samples.min(1000);
        let mut t0_hit = 0u64;
        for _ in 0..t0_total {
            let k: u32 = rng.gen();
            let x = &b - &t0_width * Rat::from_integer(BigInt::from(k)) / &denom;
            debug_assert!(v0.cmp_rat(&x) == Ordering::Less);
            let y = self.eval(&x)?;
            if a <= y && y < c {
                t0_hit += 1;
            }
        }
        report.t0_samples = Some((t0_total, t0_hit));
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, pow2, rat};

    #[test]
    fn transport_examples() {
        let s = affine_transport(&int(0), &int(1), &int(0), &int(2)).unwrap();
        assert_eq!((s.slope.clone(), s.intercept.clone()), (int(2), int(0)));
        let s = affine_transport(&int(0), &int(1), &int(5), &int(4)).unwrap();
        assert_eq!((s.slope.clone(), s.intercept.clone()), (int(-1), int(5)));
        assert!(matches!(
            affine_transport(&int(0), &int(0), &int(1), &int(2)),
            Err(MapError::DegenerateInterval)
        ));
        // composition with the inverse transport is the identity
        let f = affine_transport(&int(1), &int(3), &int(10), &int(4)).unwrap();
        let g = affine_transport(&int(10), &int(4), &int(1), &int(3)).unwrap();
        for x in [int(1), int(2), rat(5, 2), int(3)] {
            assert_eq!(g.eval(&f.eval(&x)), x);
        }
    }

    #[test]
    fn thm12_fixed_point_and_boundary() {
        let m = PiecewiseLinearMap::theorem12(int(0), int(1), rat(1, 2)).unwrap();
        let c = rat(1, 2);
        assert_eq!(m.eval(&c).unwrap(), c);
        for x in [int(0), rat(1, 4), rat(49, 100), rat(51, 100), rat(3, 4), int(1)] {
            if x != c {
                assert!(m.eval(&x).unwrap() > c, "image of {x} above c");
            }
        }
        assert!(m.verify_segment_images());
    }

    #[test]
    fn thm12_deep_point_near_c() {
        let m = PiecewiseLinearMap::theorem12(int(0), int(1), rat(1, 2)).unwrap();
        let c = rat(1, 2);
        let x = &c - pow2(-20);
        let y = m.eval(&x).unwrap();
        assert!(y > c);
        // lazy deepening reached a slice index near 20
        let seg = m.segment_at(&x).unwrap().unwrap();
        assert!(seg.contains(&x));
        assert!(m.materialized_segments().len() >= 1);
    }

    #[test]
    fn thm12_out_of_domain_and_invalid() {
        let m = PiecewiseLinearMap::theorem12(int(0), int(1), rat(1, 2)).unwrap();
        assert!(matches!(m.eval(&int(2)), Err(MapError::OutOfDomain(_))));
        assert!(matches!(
            PiecewiseLinearMap::theorem12(int(1), int(0), rat(1, 2)),
            Err(MapError::InvalidInterval)
        ));
    }

    #[test]
    fn thm21i_values() {
        let m = PiecewiseLinearMap::theorem21i(int(0), int(1)).unwrap();
        // left endpoint lands at the start of the first stretched slice
        assert_eq!(m.eval(&int(0)).unwrap(), int(1));
        // plateau midpoint: (theta1 + theta2)/2 = 1/2 is between the gaps
        assert_eq!(m.eval(&rat(1, 2)).unwrap(), int(1));
        // right endpoint: b = b_0 maps to d_0 = -1
        assert_eq!(m.eval(&int(1)).unwrap(), int(-1));
        // a point deep in the upper slices has small negative value
        let x = m.upper_net().term(40);
        assert_eq!(m.eval(&x).unwrap(), -rat(1, 41));
    }

    #[test]
    fn thm21i_unbounded() {
        let m = PiecewiseLinearMap::theorem21i(int(0), int(1)).unwrap();
        let x = m.lower_net().term(1001);
        assert_eq!(m.eval(&x).unwrap(), int(1002));
    }

    #[test]
    fn thm21ii_fixed_point_and_left_image() {
        let (a, b, c) = (int(0), int(1), rat(1, 2));
        let m = PiecewiseLinearMap::theorem21ii(a.clone(), b.clone(), c.clone()).unwrap();
        assert_eq!(m.eval(&c).unwrap(), c);
        // points of T0 = (v0, b], v0 ~ 0.9268, map into [a, c)
        for x in [int(1), rat(99, 100), rat(93, 100)] {
            let y = m.eval(&x).unwrap();
            assert!(y >= a && y < c, "T0 sample {x} -> {y}");
        }
        // points below v0 (but above c) stay above c
        for x in [rat(51, 100), rat(6, 10), rat(26, 50)] {
            let y = m.eval(&x).unwrap();
            assert!(y > c, "{x} -> {y}");
        }
        assert!(m.verify_segment_images());
    }

    #[test]
    fn probes_summarize_pathologies() {
        let m = PiecewiseLinearMap::theorem12(int(0), int(1), rat(1, 2)).unwrap();
        let r = m.probe_pathologies(200, 7).unwrap();
        assert_eq!(r.collisions, Some(0));
        assert_eq!(r.fixed_point_ok, Some(true));
        assert_eq!(r.all_images_above_c, Some(true));
        assert!(r.segment_images_in_slices);

        let m = PiecewiseLinearMap::theorem21i(int(0), int(1)).unwrap();
        let r = m.probe_pathologies(100, 7).unwrap();
        assert_eq!(r.delta_witnesses.len(), 20);
        assert!(r.delta_witnesses.iter().all(|(_, _, _, gap)| *gap >= int(1)));
        assert!(r.unbounded_witness.as_ref().unwrap().1 > int(1000));
        assert_eq!(r.zero_attained, Some(false));

        let m = PiecewiseLinearMap::theorem21ii(int(0), int(1), rat(1, 2)).unwrap();
        let r = m.probe_pathologies(100, 7).unwrap();
        assert_eq!(r.no_image_below_c, Some(true));
        let (total, hit) = r.t0_samples.unwrap();
        assert_eq!(total, hit);
    }

    #[test]
    fn depth_limit_respected() {
        let mut m = PiecewiseLinearMap::theorem12(int(0), int(1), rat(1, 2)).unwrap();
        m.set_depth_limit(8);
        let x = rat(1, 2) - pow2(-40);
        assert!(matches!(m.eval(&x), Err(MapError::DepthLimit(8))));
    }
}
