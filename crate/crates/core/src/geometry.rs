//! Hausdorff distance and Vietoris-basis membership for finitely
//! represented compact subsets of the line.

use alloc::vec::Vec;

use crate::error::Error;
use crate::interval::{ClosedInterval, IntervalSet};
use crate::scalar::Scalar;

/// A nonempty finite union of closed intervals, points included as
/// degenerate intervals. Components are sorted and pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactRep<S> {
    parts: Vec<ClosedInterval<S>>,
}

impl<S: Scalar> CompactRep<S> {
    pub fn points(points: &[S]) -> Result<Self, Error> {
        Self::intervals(points.iter().map(|p| ClosedInterval::point(p.clone())).collect())
    }

    /// Overlapping or touching intervals are merged.
    pub fn intervals(mut parts: Vec<ClosedInterval<S>>) -> Result<Self, Error> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("compact sets must be nonempty".into()));
        }
        parts.sort_by(|a, b| a.lo().cmp(b.lo()));
        let mut out: Vec<ClosedInterval<S>> = Vec::with_capacity(parts.len());
        for p in parts {
            match out.last_mut() {
                Some(last) if p.lo() <= last.hi() => {
                    if p.hi() > last.hi() {
                        *last = ClosedInterval::new(last.lo().clone(), p.hi().clone()).expect("ordered");
                    }
                }
                _ => out.push(p),
            }
        }
        Ok(CompactRep { parts: out })
    }

    /// The closure of a nonempty bounded open set.
    pub fn closure_of(set: &IntervalSet<S>) -> Result<Self, Error> {
        Self::intervals(set.components().iter().map(ClosedInterval::closure_of).collect())
    }

    pub fn components(&self) -> &[ClosedInterval<S>] {
        &self.parts
    }

    pub fn is_point_set(&self) -> bool {
        self.parts.iter().all(|p| p.lo() == p.hi())
    }

    pub fn contains(&self, x: &S) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    /// `d(x, A)`.
    pub fn distance_to(&self, x: &S) -> S {
        self.parts
            .iter()
            .map(|p| {
                if x < p.lo() {
                    p.lo().sub(x)
                } else if x > p.hi() {
                    x.sub(p.hi())
                } else {
                    S::zero()
                }
            })
            .min()
            .expect("nonempty")
    }

    /// `sup_{a ∈ self} d(a, other)`. On each component the distance to
    /// `other` is piecewise linear with peaks only at component endpoints or
    /// at the point nearest the middle of a gap of `other`.
    pub fn directed_distance(&self, other: &CompactRep<S>) -> S {
        let mut best = S::zero();
        let gaps: Vec<S> = other.parts.windows(2).map(|w| w[0].hi().mid(w[1].lo())).collect();
        for p in &self.parts {
            let mut consider = |x: &S| {
                let d = other.distance_to(x);
                if d > best {
                    best = d;
                }
            };
            consider(p.lo());
            consider(p.hi());
            for g in &gaps {
                if p.contains(g) {
                    consider(g);
                }
            }
        }
        best
    }
}

/// `d_H(A, B)`, exact for the rational backend.
pub fn hausdorff_distance<S: Scalar>(a: &CompactRep<S>, b: &CompactRep<S>) -> S {
    S::max_of(&a.directed_distance(b), &b.directed_distance(a))
}

fn union_all<S: Scalar>(opens: &[IntervalSet<S>]) -> IntervalSet<S> {
    opens.iter().fold(IntervalSet::empty(), |acc, u| acc.union(u))
}

fn meets<S: Scalar>(c: &ClosedInterval<S>, u: &IntervalSet<S>) -> bool {
    u.components().iter().any(|o| c.lo() < o.hi() && o.lo() < c.hi())
}

/// `A ∈ ⟨U_1, …, U_n⟩`: `A ⊆ ⋃ U_i` and `A ∩ U_i ≠ ∅` for every `i`.
pub fn vietoris_member<S: Scalar>(a: &CompactRep<S>, opens: &[IntervalSet<S>]) -> bool {
    if opens.is_empty() {
        return false;
    }
    let union = union_all(opens);
    a.parts.iter().all(|c| union.components().iter().any(|o| o.lo() < c.lo() && c.hi() < o.hi()))
        && opens.iter().all(|u| a.parts.iter().any(|c| meets(c, u)))
}

/// A radius `ρ > 0` such that every compact `B` with `d_H(A, B) < ρ` is
/// also in `⟨U_1, …, U_n⟩`, or `None` if `A` is not a member.
///
/// `ρ` is the smaller of the depth of `A` inside `⋃ U_i` and, over `i`, the
/// depth of the deepest point of `A ∩ U_i` inside `U_i`.
pub fn vietoris_margin<S: Scalar>(a: &CompactRep<S>, opens: &[IntervalSet<S>]) -> Option<S> {
    if !vietoris_member(a, opens) {
        return None;
    }
    let union = union_all(opens);
    let mut rho: Option<S> = None;
    let mut lower = |d: S| {
        rho = Some(match rho.take() {
            Some(r) => S::min_of(&r, &d),
            None => d,
        })
    };
    for c in &a.parts {
        let o = union.components().iter().find(|o| o.lo() < c.lo() && c.hi() < o.hi()).expect("member");
        lower(S::min_of(&c.lo().sub(o.lo()), &o.hi().sub(c.hi())));
    }
    for u in opens {
        let mut deepest = S::zero();
        for c in &a.parts {
            for o in u.components() {
                let lo = S::max_of(c.lo(), o.lo());
                let hi = S::min_of(c.hi(), o.hi());
                if lo > hi {
                    continue;
                }
                let m = o.mid();
                let p = if m < lo { lo } else if m > hi { hi } else { m };
                let depth = S::min_of(&p.sub(o.lo()), &o.hi().sub(&p));
                if depth > deepest {
                    deepest = depth;
                }
            }
        }
        lower(deepest);
    }
    rho
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use alloc::vec;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn ci(a: Rational, b: Rational) -> ClosedInterval<Rational> {
        ClosedInterval::new(a, b).unwrap()
    }

    #[test]
    fn distances() {
        let a = CompactRep::points(&[r(0, 1)]).unwrap();
        let b = CompactRep::points(&[r(1, 1)]).unwrap();
        assert_eq!(hausdorff_distance(&a, &b), r(1, 1));
        let a = CompactRep::intervals(vec![ci(r(0, 1), r(1, 1))]).unwrap();
        let b = CompactRep::intervals(vec![ci(r(0, 1), r(2, 1))]).unwrap();
        assert_eq!(hausdorff_distance(&a, &b), r(1, 1));
        assert_eq!(hausdorff_distance(&a, &a), r(0, 1));
    }

    #[test]
    fn gap_midpoint_dominates() {
        let a = CompactRep::intervals(vec![ci(r(0, 1), r(10, 1))]).unwrap();
        let b = CompactRep::points(&[r(0, 1), r(10, 1)]).unwrap();
        assert_eq!(hausdorff_distance(&a, &b), r(5, 1));
    }

    #[test]
    fn merges_touching_parts() {
        let a = CompactRep::intervals(vec![ci(r(1, 2), r(1, 1)), ci(r(0, 1), r(1, 2))]).unwrap();
        assert_eq!(a.components(), [ci(r(0, 1), r(1, 1))]);
        assert!(CompactRep::<Rational>::points(&[]).is_err());
    }

    #[test]
    fn vietoris_examples() {
        let opens = [IntervalSet::open(r(0, 1), r(1, 2)), IntervalSet::open(r(1, 2), r(1, 1))];
        assert!(vietoris_member(&CompactRep::points(&[r(2, 10), r(8, 10)]).unwrap(), &opens));
        assert!(!vietoris_member(&CompactRep::points(&[r(2, 10)]).unwrap(), &opens));
        let unit = CompactRep::intervals(vec![ci(r(0, 1), r(1, 1))]).unwrap();
        assert!(vietoris_member(&unit, &[IntervalSet::open(r(-1, 10), r(11, 10))]));
        assert!(!vietoris_member(&unit, &opens));
    }

    #[test]
    fn margin_is_tight_for_points() {
        let opens = [IntervalSet::open(r(0, 1), r(1, 2)), IntervalSet::open(r(1, 2), r(1, 1))];
        let a = CompactRep::points(&[r(2, 10), r(8, 10)]).unwrap();
        assert_eq!(vietoris_margin(&a, &opens), Some(r(2, 10)));
    }
}
