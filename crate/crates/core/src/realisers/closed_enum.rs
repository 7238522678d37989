use crate::error::Error;
use crate::interval::{ClosedInterval, RationalInterval};
use crate::open_sets::{merge_components, OpenR4};
use crate::rational::Rational;
use crate::real::ExactReal;

/// `[0,1]` minus a finite union of open intervals, as sorted closed components.
pub fn closed_components(intervals: Vec<RationalInterval>) -> Vec<ClosedInterval> {
    let one = Rational::one();
    let mut out = Vec::new();
    let mut cursor = Rational::zero();
    for c in merge_components(intervals) {
        if c.hi() <= &cursor {
            continue;
        }
        if cursor > one {
            break;
        }
        if c.lo() >= &cursor {
            out.push(ClosedInterval::new(cursor.clone(), Rational::min_of(c.lo(), &one)));
        }
        cursor = c.hi().clone();
    }
    if cursor <= one {
        out.push(ClosedInterval::new(cursor, one));
    }
    out
}

/// Result of enumerating a finite closed set from its complement.
#[derive(Debug, Clone)]
pub struct ClosedEnumeration {
    pub points: Vec<ExactReal>,
    /// Accepted components, each of width at most `2^{-k}`.
    pub components: Vec<ClosedInterval>,
    /// Number of enumeration slots read at acceptance.
    pub stage: usize,
}

fn acceptable(components: &[ClosedInterval], bound: usize, k: u32) -> bool {
    let tol = Rational::pow2_neg(k);
    components.len() <= bound && components.iter().all(|c| c.width() <= tol)
}

/// Locates the points of `C = [0,1] ∖ ⋃ complement` when `C` is finite with `|C| ≤ bound`.
///
/// Finite enumerations are read in full. Infinite ones are read at stages
/// `m = 1, 2, 4, …` until stage `m` and `2m` both show at most `bound`
/// components of width `≤ 2^{-k}` with equal counts. `max_stage` caps `m`.
pub fn enumerate_finite_closed(
    complement: &OpenR4,
    bound: usize,
    k: u32,
    max_stage: usize,
) -> Result<ClosedEnumeration, Error> {
    if let Some(len) = complement.len() {
        let comps = closed_components(complement.prefix(len));
        if comps.len() > bound || comps.iter().any(|c| c.width().is_positive()) {
            return Err(Error::budget(
                format!("closed set has {} components after all {len} intervals", comps.len()),
                len as u64,
            ));
        }
        let points = comps.iter().map(|c| ExactReal::from_rational(c.lo.clone())).collect();
        return Ok(ClosedEnumeration { points, components: comps, stage: len });
    }
    let mut m = 1usize;
    while 2 * m <= max_stage {
        let here = closed_components(complement.prefix(m));
        if acceptable(&here, bound, k) {
            let next = closed_components(complement.prefix(2 * m));
            if acceptable(&next, bound, k) && next.len() == here.len() {
                let points = next.iter().map(|c| refined_point(complement, c, k, 2 * m, max_stage)).collect();
                return Ok(ClosedEnumeration { points, components: next, stage: 2 * m });
            }
        }
        m *= 2;
    }
    Err(Error::budget(format!("closed set not resolved to {bound} components"), max_stage as u64))
}

/// The real inside `component`, refined by later stages.
///
/// Precisions up to `k + 1` use the component centre. Finer requests read
/// further stages until a single sub-component of the needed width remains; if
/// none appears before `max_stage`, the centre is returned as is.
fn refined_point(complement: &OpenR4, component: &ClosedInterval, k: u32, stage: usize, max_stage: usize) -> ExactReal {
    if component.width().is_zero() {
        return ExactReal::from_rational(component.lo.clone());
    }
    let complement = complement.clone();
    let component = component.clone();
    ExactReal::from_cauchy_fn(move |j| {
        if j <= k + 1 {
            return component.center();
        }
        let tol = Rational::pow2_neg(j);
        let mut m = stage * 2;
        while m <= max_stage {
            let subs: Vec<ClosedInterval> =
                closed_components(complement.prefix(m)).into_iter().filter(|c| c.within(&component)).collect();
            if subs.len() == 1 && subs[0].width() <= tol {
                return subs[0].center();
            }
            m *= 2;
        }
        component.center()
    })
}
