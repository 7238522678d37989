use std::fmt;
use std::sync::Arc;

use super::{OpenR2, OpenR3};
use crate::interval::RationalInterval;
use crate::rational::Rational;

type SlotFn = dyn Fn(usize) -> Option<RationalInterval> + Send + Sync;

/// Interval-enumeration view. Slots may be empty; `len = None` means the
/// enumeration is infinite.
#[derive(Clone)]
pub struct OpenR4 {
    slot: Arc<SlotFn>,
    len: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    InsideWithRadius(Rational),
    UnknownAt(usize),
}

impl OpenR4 {
    pub fn from_intervals(intervals: Vec<RationalInterval>) -> Self {
        let len = intervals.len();
        let intervals = Arc::new(intervals);
        OpenR4 { slot: Arc::new(move |n| intervals.get(n).cloned()), len: Some(len) }
    }

    pub fn from_slots(
        slot: impl Fn(usize) -> Option<RationalInterval> + Send + Sync + 'static,
        len: Option<usize>,
    ) -> Self {
        OpenR4 { slot: Arc::new(slot), len }
    }

    pub fn empty() -> Self {
        OpenR4::from_intervals(Vec::new())
    }

    pub fn len(&self) -> Option<usize> {
        self.len
    }

    pub fn is_finite(&self) -> bool {
        self.len.is_some()
    }

    pub fn interval_at(&self, n: usize) -> Option<RationalInterval> {
        match self.len {
            Some(len) if n >= len => None,
            _ => (self.slot)(n),
        }
    }

    /// Non-empty intervals among the first `m` slots.
    pub fn prefix(&self, m: usize) -> Vec<RationalInterval> {
        let m = self.len.map_or(m, |len| m.min(len));
        (0..m).filter_map(|n| (self.slot)(n)).collect()
    }
}

impl fmt::Debug for OpenR4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.len {
            Some(len) => write!(f, "OpenR4({len} slots)"),
            None => write!(f, "OpenR4(infinite)"),
        }
    }
}

/// Semidecides `q ∈ O` from the first `m` slots.
pub fn r4_membership(o: &OpenR4, q: &Rational, m: usize) -> Membership {
    let best = o.prefix(m).iter().map(|i| i.inner_radius(q)).max();
    match best {
        Some(r) if r.is_positive() => Membership::InsideWithRadius(r),
        _ => Membership::UnknownAt(m),
    }
}

/// Radius witness that scans the first `p` slots at probe precision `p`.
pub fn r4_to_r2(o: &OpenR4) -> OpenR2 {
    let o = o.clone();
    OpenR2::from_fn(move |x, p| match r4_membership(&o, x, p as usize) {
        Membership::InsideWithRadius(r) => r,
        Membership::UnknownAt(_) => Rational::zero(),
    })
}

/// Sorted sweep merge. Touching intervals stay apart because the shared
/// endpoint is not covered.
pub fn merge_components(mut intervals: Vec<RationalInterval>) -> Vec<RationalInterval> {
    intervals.sort_by(|a, b| a.lo().cmp(b.lo()));
    let mut merged: Vec<RationalInterval> = Vec::with_capacity(intervals.len());
    for next in intervals {
        match merged.last_mut() {
            Some(cur) if next.lo() < cur.hi() => {
                if next.hi() > cur.hi() {
                    *cur = RationalInterval::of(cur.lo().clone(), next.hi().clone());
                }
            }
            _ => merged.push(next),
        }
    }
    merged
}

/// Exact distance from `x` to `[0,1] ∖ (first m intervals)`, zero when `x` is outside.
///
/// When the stage already covers all of `[0,1]` the bound is the constant 1.
pub fn r4_to_r3_lower_bound(o: &OpenR4, x: &Rational, m: usize) -> Rational {
    if !x.in_unit_interval() {
        return Rational::zero();
    }
    let components = merge_components(o.prefix(m));
    let Some(c) = components.iter().find(|c| c.contains(x)) else {
        return Rational::zero();
    };
    let left = (c.lo() >= &Rational::zero()).then(|| x - c.lo());
    let right = (c.hi() <= &Rational::one()).then(|| c.hi() - x);
    match (left, right) {
        (Some(l), Some(r)) => Rational::min_of(&l, &r),
        (Some(d), None) | (None, Some(d)) => d,
        (None, None) => Rational::one(),
    }
}

pub fn r4_to_r3(o: &OpenR4) -> OpenR3 {
    let o = o.clone();
    OpenR3::from_fn(move |x, m| r4_to_r3_lower_bound(&o, x, m as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn iv(a: Rational, b: Rational) -> RationalInterval {
        RationalInterval::of(a, b)
    }

    fn middle() -> OpenR4 {
        OpenR4::from_intervals(vec![iv(q(1, 4), q(3, 4))])
    }

    fn split_half() -> OpenR4 {
        OpenR4::from_intervals(vec![iv(q(0, 1), q(1, 2)), iv(q(1, 2), q(1, 1))])
    }

    #[test]
    fn membership_examples() {
        assert_eq!(r4_membership(&middle(), &q(1, 2), 1), Membership::InsideWithRadius(q(1, 4)));
        for m in [0, 1, 5, 100] {
            assert_eq!(r4_membership(&middle(), &q(1, 8), m), Membership::UnknownAt(m));
        }
        assert_eq!(r4_membership(&split_half(), &q(1, 2), 2), Membership::UnknownAt(2));
    }

    #[test]
    fn r2_examples() {
        assert_eq!(r4_to_r2(&middle()).radius(&q(1, 2), 1), q(1, 4));
        assert_eq!(r4_to_r2(&split_half()).radius(&q(1, 3), 2), q(1, 6));
        assert_eq!(r4_to_r2(&middle()).radius(&q(1, 8), 10), Rational::zero());
    }

    #[test]
    fn r3_examples() {
        assert_eq!(r4_to_r3_lower_bound(&middle(), &q(1, 2), 1), q(1, 4));
        let overlap = OpenR4::from_intervals(vec![iv(q(0, 1), q(1, 2)), iv(q(1, 4), q(3, 4))]);
        assert_eq!(r4_to_r3_lower_bound(&overlap, &q(1, 2), 2), q(1, 4));
        for m in [0, 1, 7] {
            assert_eq!(r4_to_r3_lower_bound(&middle(), &q(1, 4), m), Rational::zero());
        }
        let cover = OpenR4::from_intervals(vec![iv(q(-1, 2), q(1, 2)), iv(q(1, 4), q(3, 2))]);
        assert_eq!(r4_to_r3_lower_bound(&cover, &q(1, 3), 1), q(1, 6));
        assert_eq!(r4_to_r3_lower_bound(&cover, &q(1, 3), 2), Rational::one());
        assert_eq!(r4_to_r3_lower_bound(&cover, &q(0, 1), 2), Rational::one());
    }

    #[test]
    fn merge_keeps_touching_apart() {
        let merged = merge_components(vec![iv(q(1, 2), q(1, 1)), iv(q(0, 1), q(1, 2))]);
        assert_eq!(merged.len(), 2);
        let merged = merge_components(vec![iv(q(1, 3), q(1, 1)), iv(q(0, 1), q(1, 2)), iv(q(1, 8), q(1, 4))]);
        assert_eq!(merged, vec![iv(q(0, 1), q(1, 1))]);
    }

    #[test]
    fn infinite_enumeration_prefix() {
        let o = OpenR4::from_slots(|n| (n % 2 == 0).then(|| iv(Rational::zero(), Rational::pow2_neg(n as u32))), None);
        assert_eq!(o.prefix(5).len(), 3);
        assert!(o.interval_at(1).is_none());
    }

    /// Brute-force distance: scan a fine grid of the complement.
    fn grid_distance(intervals: &[RationalInterval], x: &Rational, g: u32) -> Rational {
        let n = 1i64 << g;
        let mut best: Option<Rational> = None;
        for i in 0..=n {
            let y = q(i, n);
            if intervals.iter().any(|iv| iv.contains(&y)) {
                continue;
            }
            let d = (&y - x).abs();
            best = Some(match best {
                Some(b) if b <= d => b,
                _ => d,
            });
        }
        best.unwrap_or_else(Rational::one)
    }

    proptest! {
        #[test]
        fn lower_bound_monotone_and_matches_grid(
            raw in proptest::collection::vec((0i64..16, 1i64..8), 1..6),
            xn in 0i64..=64,
        ) {
            // endpoints on the 1/16 grid so a 1/64 grid scan is exact
            let intervals: Vec<RationalInterval> = raw
                .iter()
                .filter(|(a, w)| a + w <= 16)
                .map(|(a, w)| iv(q(*a, 16), q(a + w, 16)))
                .collect();
            let o = OpenR4::from_intervals(intervals.clone());
            let x = q(xn, 64);
            let mut prev = Rational::zero();
            for m in 0..=intervals.len() {
                let lb = r4_to_r3_lower_bound(&o, &x, m);
                prop_assert!(lb >= prev);
                prev = lb;
            }
            let exact = grid_distance(&intervals, &x, 6);
            prop_assert_eq!(prev, exact);
        }
    }
}
