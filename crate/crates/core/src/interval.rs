use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::Rational;

/// An open interval `(lo, hi)` with rational endpoints, `lo < hi`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(Rational, Rational)", into = "(Rational, Rational)")]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, Error> {
        if lo < hi {
            Ok(RationalInterval { lo, hi })
        } else {
            Err(Error::InvalidInput(format!("degenerate interval ({lo}, {hi})")))
        }
    }

    /// Panicking constructor for literals known to be well formed.
    pub fn of(lo: Rational, hi: Rational) -> Self {
        RationalInterval::new(lo, hi).expect("interval endpoints out of order")
    }

    /// The ball `(c - r, c + r)`; requires `r > 0`.
    pub fn ball(c: &Rational, r: &Rational) -> Self {
        RationalInterval::of(c - r, c + r)
    }

    pub fn unit() -> Self {
        RationalInterval::of(Rational::zero(), Rational::one())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn center(&self) -> Rational {
        Rational::midpoint(&self.lo, &self.hi)
    }

    /// Membership in the open interval.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn contains_closed(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Distance from an interior point to the nearer endpoint; zero outside.
    pub fn inner_radius(&self, x: &Rational) -> Rational {
        if self.contains(x) {
            Rational::min_of(&(x - &self.lo), &(&self.hi - x))
        } else {
            Rational::zero()
        }
    }

    /// Closure of `self` lies inside the open interval `outer`.
    pub fn closure_within(&self, outer: &RationalInterval) -> bool {
        outer.lo < self.lo && self.hi < outer.hi
    }

    /// `self ⊆ outer` as open intervals.
    pub fn within(&self, outer: &RationalInterval) -> bool {
        outer.lo <= self.lo && self.hi <= outer.hi
    }

    /// Point at relative position `s ∈ (0,1)`: `lo + s·(hi − lo)`.
    pub fn affine(&self, s: &Rational) -> Rational {
        &self.lo + s * self.width()
    }
}

impl TryFrom<(Rational, Rational)> for RationalInterval {
    type Error = Error;
    fn try_from((lo, hi): (Rational, Rational)) -> Result<Self, Error> {
        RationalInterval::new(lo, hi)
    }
}

impl From<RationalInterval> for (Rational, Rational) {
    fn from(i: RationalInterval) -> Self {
        (i.lo, i.hi)
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A closed interval `[lo, hi]` with `lo ≤ hi`; points are allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ClosedInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl ClosedInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "closed interval endpoints out of order");
        ClosedInterval { lo, hi }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn center(&self) -> Rational {
        Rational::midpoint(&self.lo, &self.hi)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn within(&self, outer: &ClosedInterval) -> bool {
        outer.lo <= self.lo && self.hi <= outer.hi
    }

    /// Gap between this interval and another closed one; non-positive when they meet.
    pub fn gap(&self, other: &ClosedInterval) -> Rational {
        Rational::max_of(&(&self.lo - &other.hi), &(&other.lo - &self.hi))
    }
}
