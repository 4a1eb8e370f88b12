//! Closed real intervals with outward-rounded arithmetic.
//!
//! Only the operations needed by normalization, outward widening of reported
//! endpoints, and the interval Sturm recurrence are provided. Every arithmetic
//! result is pushed one ulp outward with [`f64::next_down`] / [`f64::next_up`]
//! unless the rounding error is known to be zero, which substitutes for
//! directed rounding modes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of ulps every reported endpoint is pushed outward by.
pub const OUTWARD_ULPS: u32 = 4;

/// A closed interval `[lo, hi]` with finite endpoints and `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::NonFiniteInterval { lo, hi });
        }
        if lo > hi {
            return Err(Error::InvertedInterval { lo, hi });
        }
        // -0.0 and 0.0 compare equal; normalize so printing is stable
        Ok(Self {
            lo: lo + 0.0,
            hi: hi + 0.0,
        })
    }

    /// Degenerate interval `[x, x]`.
    ///
    /// # Panics
    /// If `x` is not finite.
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "interval endpoint must be finite");
        Self {
            lo: x + 0.0,
            hi: x + 0.0,
        }
    }

    /// Builds the hull of two finite values in either order.
    pub fn hull_of(a: f64, b: f64) -> Result<Self> {
        Self::new(a.min(b), a.max(b))
    }

    pub(crate) fn new_unchecked(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    pub fn rad(&self) -> f64 {
        0.5 * self.hi - 0.5 * self.lo
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Distance from `x` to the interval (zero inside).
    pub fn distance_to(&self, x: f64) -> f64 {
        if x < self.lo {
            self.lo - x
        } else if x > self.hi {
            x - self.hi
        } else {
            0.0
        }
    }

    /// Pushes both endpoints outward by `abs` and then by `ulps` units in the
    /// last place.
    pub fn widen(&self, abs: f64, ulps: u32) -> Interval {
        debug_assert!(abs >= 0.0);
        let mut lo = sub_down(self.lo, abs);
        let mut hi = add_up(self.hi, abs);
        for _ in 0..ulps {
            lo = lo.next_down();
            hi = hi.next_up();
        }
        Interval { lo, hi }
    }

    /// Standard outward widening applied to every reported endpoint.
    pub fn outward(&self, abs: f64) -> Interval {
        self.widen(abs, OUTWARD_ULPS)
    }

    /// Shrinks both endpoints toward the midpoint by `abs`; collapses to the
    /// midpoint if the interval is narrower than `2 abs`.
    pub fn shrink(&self, abs: f64) -> Interval {
        if self.width() <= 2.0 * abs {
            Interval::point(self.mid())
        } else {
            Interval {
                lo: self.lo + abs,
                hi: self.hi - abs,
            }
        }
    }

    /// Reflection `-[lo, hi] = [-hi, -lo]` (exact).
    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi + 0.0,
            hi: -self.lo + 0.0,
        }
    }

    /// Shift by a scalar, rounded outward only when the sum is inexact.
    pub fn shift(&self, by: f64) -> Interval {
        Interval {
            lo: add_down(self.lo, by),
            hi: add_up(self.hi, by),
        }
    }

    pub fn add(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: add_down(self.lo, rhs.lo),
            hi: add_up(self.hi, rhs.hi),
        }
    }

    pub fn sub(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: sub_down(self.lo, rhs.hi),
            hi: sub_up(self.hi, rhs.lo),
        }
    }

    pub fn mul(&self, rhs: &Interval) -> Interval {
        let p = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    /// Square `{x² : x ∈ self}`; tighter than `self.mul(self)` when the
    /// interval straddles zero.
    pub fn sqr(&self) -> Interval {
        let (a, b) = (self.lo.abs(), self.hi.abs());
        let hi = (a.max(b) * a.max(b)).next_up();
        let lo = if self.contains_zero() {
            0.0
        } else {
            (a.min(b) * a.min(b)).next_down().max(0.0)
        };
        Interval { lo, hi }
    }

    /// Quotient; `None` when the divisor contains zero.
    pub fn div(&self, rhs: &Interval) -> Option<Interval> {
        if rhs.contains_zero() {
            return None;
        }
        let q = [
            self.lo / rhs.lo,
            self.lo / rhs.hi,
            self.hi / rhs.lo,
            self.hi / rhs.hi,
        ];
        let lo = q.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Some(Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        })
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from(pair: [f64; 2]) -> Result<Self> {
        Interval::new(pair[0], pair[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(iv: Interval) -> Self {
        [iv.lo, iv.hi]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "[{:.*}, {:.*}]", p, self.lo, p, self.hi),
            None => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

/// Error-free transformation: `a + b = s + e` exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// `a + b` rounded toward -inf.
pub fn add_down(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        return s;
    }
    if e < 0.0 {
        s.next_down()
    } else {
        s
    }
}

/// `a + b` rounded toward +inf.
pub fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if !s.is_finite() {
        return s;
    }
    if e > 0.0 {
        s.next_up()
    } else {
        s
    }
}

pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}
