use std::sync::Arc;

use baire_core::enumerate::{canonical_prefix, canonical_rational};
use baire_core::gallery::{finite_indicator, thomae, SharedFunction};
use baire_core::interval::RationalInterval;
use baire_core::open_sets::{r3_to_r4, r4_to_r3, r4_to_r3_lower_bound, DenseOpenSequence, OpenR2, OpenR3, OpenR4};
use baire_core::rational::{q, Rational};
use baire_core::real::ExactReal;
use baire_core::realisers::{bct_realiser, cantor_avoid, enumerate_finite_closed};
use baire_core::reductions::{
    continuity_point_from_baire, volterra_from_baire, Certificate, OwnBct, ReductionConfig, VolterraAnswer,
    VolterraMode,
};
use proptest::prelude::*;

fn avoid_rationals() -> DenseOpenSequence {
    DenseOpenSequence::new(|n| OpenR2::complement_of_finite(canonical_prefix(n + 1)))
}

#[test]
fn bct_trace_is_nested_and_contains_the_value() {
    let p = bct_realiser(avoid_rationals(), Some(10_000));
    let trace = p.trace(24).unwrap();
    for (n, st) in trace.iter().enumerate() {
        assert!(st.interval.width() <= Rational::pow2_neg(n as u32));
        if n > 0 {
            assert!(st.interval.closure_within(&trace[n - 1].interval));
        }
        // the limit lies in every stage interval, so its approximants stay close
        let a = p.value().approx(n as u32 + 4);
        let slack = st.interval.width() / Rational::from(2) + Rational::pow2_neg(n as u32 + 4);
        assert!((&a - st.interval.center()).abs() <= slack);
        assert!(!st.interval.contains_closed(&canonical_rational(n as u64)));
    }
}

#[test]
fn continuity_point_of_thomae_avoids_each_dk() {
    let f: SharedFunction = Arc::new(thomae());
    let cfg = ReductionConfig { depth: 8, ..ReductionConfig::default() };
    let p = continuity_point_from_baire(f.clone(), &OwnBct { stage_budget: Some(10_000) }, &cfg).unwrap();
    let mut covered = Vec::new();
    for c in &p.certificates {
        if let Certificate::OutsideDk { k, ball, .. } = c {
            assert!(ball.verify(&f.complement_of_dk(*k)));
            covered.push(*k);
        }
    }
    assert_eq!(covered, (0..=8).collect::<Vec<_>>());
}

#[test]
fn volterra_on_an_indicator_finds_its_point() {
    let f: SharedFunction = Arc::new(finite_indicator(vec![q(1, 3)]));
    let cfg = ReductionConfig::default();
    match volterra_from_baire(f, &OwnBct { stage_budget: Some(10_000) }, VolterraMode::Dovetail, &cfg).unwrap() {
        VolterraAnswer::RationalDiscontinuity { q: x, m } => {
            assert_eq!(x, q(1, 3));
            assert_eq!(m, 0);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn cantor_avoid_separates_from_listed_rationals() {
    let p = cantor_avoid(|n| Some(ExactReal::from_rational(canonical_rational(n as u64))));
    for n in 0..40 {
        let r = p.separation_radius(n).unwrap();
        assert!(r.is_positive());
        let y = p.value().approx(80);
        assert!((y - canonical_rational(n as u64)).abs() >= r - Rational::pow2_neg(80));
    }
}

#[test]
fn finite_closed_set_is_recovered_through_distances() {
    let points = vec![q(1, 5), q(1, 2), q(7, 9)];
    let complement = r3_to_r4(&OpenR3::exact_complement_of_finite(points.clone()));
    let e = enumerate_finite_closed(&complement, 8, 10, 1 << 20).unwrap();
    assert_eq!(e.components.len(), points.len());
    for (c, p) in e.components.iter().zip(&points) {
        assert!(c.contains(p));
        assert!(c.width() <= Rational::pow2_neg(10));
    }
}

fn grid_intervals(raw: &[(i64, i64)]) -> Vec<RationalInterval> {
    raw.iter().map(|(a, w)| RationalInterval::of(q(*a, 16), q(a + w, 16))).collect()
}

proptest! {
    #[test]
    fn distance_bounds_increase_with_stage(
        raw in proptest::collection::vec((-2i64..16, 1i64..8), 1..6),
        xn in 0i64..=48,
    ) {
        let o = OpenR4::from_intervals(grid_intervals(&raw));
        let x = q(xn, 48);
        let mut prev = Rational::zero();
        for m in 0..=raw.len() {
            let lb = r4_to_r3_lower_bound(&o, &x, m);
            prop_assert!(lb >= prev);
            prev = lb;
        }
    }

    #[test]
    fn round_trip_never_covers_the_complement(
        raw in proptest::collection::vec((-2i64..16, 1i64..8), 1..5),
        slots in 0usize..3000,
    ) {
        let list = grid_intervals(&raw);
        let back = r3_to_r4(&r4_to_r3(&OpenR4::from_intervals(list.clone())));
        if let Some(i) = back.interval_at(slots) {
            // every grid point of [0,1] inside i must be inside some original interval
            for k in 0..=64i64 {
                let y = q(k, 64);
                if i.contains(&y) {
                    prop_assert!(list.iter().any(|o| o.contains(&y)), "{} covers {}", i, y);
                }
            }
        }
    }
}
