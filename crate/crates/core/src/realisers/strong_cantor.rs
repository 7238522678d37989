use std::sync::{Arc, Mutex};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::avoid::{cantor_avoid, AvoidancePoint};
use super::bct::{bct_realiser, BairePoint};
use crate::certificate::{certify_apart, SeparationCertificate};
use crate::error::Error;
use crate::open_sets::{DenseOpenSequence, OpenR2};
use crate::rational::Rational;
use crate::real::ExactReal;

/// A countable set given by nested finite slices `A_0 ⊆ A_1 ⊆ …`.
pub trait HeightCountableSet: Send + Sync {
    fn slice(&self, n: usize) -> Vec<Rational>;
}

/// `A_n` = fractions of `[0,1]` with denominator at most `n`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HeightDenominator;

impl HeightCountableSet for HeightDenominator {
    fn slice(&self, n: usize) -> Vec<Rational> {
        let n = n as i64;
        let mut out = Vec::new();
        for den in 1..=n {
            for num in 0..=den {
                if num.gcd(&den) == 1 {
                    out.push(Rational::new(num, den));
                }
            }
        }
        out.sort();
        out
    }
}

/// Slices listed explicitly; past the end the last slice repeats.
#[derive(Debug, Clone, Default)]
pub struct ExplicitSlices {
    slices: Vec<Vec<Rational>>,
}

impl ExplicitSlices {
    /// Fails unless the slices are nested.
    pub fn new(slices: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let slices: Vec<Vec<Rational>> = slices
            .into_iter()
            .map(|mut s| {
                s.sort();
                s.dedup();
                s
            })
            .collect();
        for (n, w) in slices.windows(2).enumerate() {
            if let Some(missing) = w[0].iter().find(|x| w[1].binary_search(x).is_err()) {
                return Err(Error::InvalidInput(format!("slice {} drops {missing} from slice {n}", n + 1)));
            }
        }
        Ok(ExplicitSlices { slices })
    }
}

impl HeightCountableSet for ExplicitSlices {
    fn slice(&self, n: usize) -> Vec<Rational> {
        self.slices.get(n).or(self.slices.last()).cloned().unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CantorRoute {
    ViaBaire,
    ViaEnumeration,
}

#[derive(Clone, Debug)]
enum RoutePoint {
    Baire(BairePoint),
    Avoid(AvoidancePoint),
}

/// A point outside a height-countable set.
#[derive(Clone, Debug)]
pub struct StrongCantorPoint {
    pub route: CantorRoute,
    point: RoutePoint,
}

impl StrongCantorPoint {
    pub fn value(&self) -> &ExactReal {
        match &self.point {
            RoutePoint::Baire(p) => p.value(),
            RoutePoint::Avoid(p) => p.value(),
        }
    }

    pub fn baire_point(&self) -> Option<&BairePoint> {
        match &self.point {
            RoutePoint::Baire(p) => Some(p),
            RoutePoint::Avoid(_) => None,
        }
    }

    pub fn avoidance_point(&self) -> Option<&AvoidancePoint> {
        match &self.point {
            RoutePoint::Avoid(p) => Some(p),
            RoutePoint::Baire(_) => None,
        }
    }

    pub fn ensure_depth(&self, depth: usize) -> Result<(), Error> {
        match &self.point {
            RoutePoint::Baire(p) => p.ensure_depth(depth),
            RoutePoint::Avoid(p) => {
                p.stages(depth);
                Ok(())
            }
        }
    }

    /// Separation certificates from every element of `A_n`.
    pub fn certificates(
        &self,
        set: &dyn HeightCountableSet,
        n: usize,
        budget: u32,
    ) -> Result<Vec<SeparationCertificate>, Error> {
        set.slice(n).iter().map(|a| certify_apart(self.value(), a, budget)).collect()
    }
}

/// Slot sequence for the enumeration route: for each `n`, an empty slot and
/// then the elements new in `A_n`.
struct SlotSequence {
    set: Arc<dyn HeightCountableSet>,
    slots: Vec<Option<Rational>>,
    next_n: usize,
    previous: Vec<Rational>,
}

impl SlotSequence {
    fn get(&mut self, i: usize) -> Option<Rational> {
        while self.slots.len() <= i {
            let current = self.set.slice(self.next_n);
            self.slots.push(None);
            self.slots.extend(current.iter().filter(|x| self.previous.binary_search(x).is_err()).cloned().map(Some));
            self.previous = current;
            self.previous.sort();
            self.next_n += 1;
        }
        self.slots[i].clone()
    }
}

/// The first `count` slots the enumeration route feeds to the avoider.
pub fn enumeration_slots(set: Arc<dyn HeightCountableSet>, count: usize) -> Vec<Option<Rational>> {
    let mut seq = SlotSequence { set, slots: Vec::new(), next_n: 0, previous: Vec::new() };
    (0..count).map(|i| seq.get(i)).collect()
}

pub fn strong_cantor_realiser(
    set: Arc<dyn HeightCountableSet>,
    route: CantorRoute,
    stage_budget: Option<u64>,
) -> StrongCantorPoint {
    let point = match route {
        CantorRoute::ViaBaire => {
            let seq = DenseOpenSequence::new(move |n| OpenR2::complement_of_finite(set.slice(n)));
            RoutePoint::Baire(bct_realiser(seq, stage_budget))
        }
        CantorRoute::ViaEnumeration => {
            let slots = Mutex::new(SlotSequence { set, slots: Vec::new(), next_n: 0, previous: Vec::new() });
            let avoid = cantor_avoid(move |i| {
                slots.lock().expect("slot sequence poisoned").get(i).map(ExactReal::from_rational)
            });
            RoutePoint::Avoid(avoid)
        }
    };
    StrongCantorPoint { route, point }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn height_denominator_slices() {
        assert!(HeightDenominator.slice(0).is_empty());
        assert_eq!(HeightDenominator.slice(1), vec![q(0, 1), q(1, 1)]);
        assert_eq!(HeightDenominator.slice(3), vec![q(0, 1), q(1, 3), q(1, 2), q(2, 3), q(1, 1)]);
        // |A_20| = 1 + Σ φ(d), d ≤ 20
        assert_eq!(HeightDenominator.slice(20).len(), 129);
    }

    #[test]
    fn explicit_slices_must_nest() {
        assert!(ExplicitSlices::new(vec![vec![q(1, 2)], vec![q(1, 3)]]).is_err());
        let s = ExplicitSlices::new(vec![vec![q(1, 2)], vec![q(1, 3), q(1, 2)]]).unwrap();
        assert_eq!(s.slice(7), vec![q(1, 3), q(1, 2)]);
    }

    #[test]
    fn both_routes_avoid_a20() {
        for route in [CantorRoute::ViaBaire, CantorRoute::ViaEnumeration] {
            let p = strong_cantor_realiser(Arc::new(HeightDenominator), route, Some(100_000));
            p.ensure_depth(24).unwrap();
            let certs = p.certificates(&HeightDenominator, 20, 200).unwrap();
            assert_eq!(certs.len(), 129);
            assert!(certs.iter().all(|c| c.is_consistent() && c.radius().is_positive()), "{route:?}");
        }
    }

    #[test]
    fn empty_set_is_unconstrained() {
        let p = strong_cantor_realiser(Arc::new(ExplicitSlices::default()), CantorRoute::ViaBaire, None);
        assert_eq!(p.value().approx(3), q(1, 2));
        assert!(p.certificates(&ExplicitSlices::default(), 5, 10).unwrap().is_empty());
    }

    #[test]
    fn enumeration_slots_interleave_empty_markers() {
        let mut s = SlotSequence { set: Arc::new(HeightDenominator), slots: Vec::new(), next_n: 0, previous: Vec::new() };
        let got: Vec<Option<Rational>> = (0..7).map(|i| s.get(i)).collect();
        assert_eq!(got, vec![None, None, Some(q(0, 1)), Some(q(1, 1)), None, Some(q(1, 2)), None]);
    }
}
