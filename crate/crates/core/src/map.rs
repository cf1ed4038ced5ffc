//! Piecewise-affine maps of the real line.
//!
//! Piece domains are closed and may be unbounded; interiors must be pairwise
//! disjoint. A point on a shared boundary is evaluated by the first piece in
//! list order that contains it. Set images and preimages are computed on
//! open sets and are exact up to finitely many boundary points: components
//! meeting at a breakpoint whose value lies in the set are joined.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::interval::{ClosedInterval, Domain, Interval, IntervalSet};
use crate::scalar::Scalar;

/// `x ↦ slope·x + offset` on `domain`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffinePiece<S> {
    domain: Domain<S>,
    slope: S,
    offset: S,
}

impl<S: Scalar> AffinePiece<S> {
    /// Slopes must be nonzero so that images of open sets stay open.
    pub fn new(domain: Domain<S>, slope: S, offset: S) -> Result<Self> {
        if slope.is_zero() {
            return Err(Error::InvalidMap(format!("zero slope on piece with offset {offset}")));
        }
        Ok(AffinePiece { domain, slope, offset })
    }

    /// Affine piece defined on all of ℝ.
    pub fn global(slope: S, offset: S) -> Result<Self> {
        AffinePiece::new(Domain::everywhere(), slope, offset)
    }

    pub fn domain(&self) -> &Domain<S> {
        &self.domain
    }

    pub fn slope(&self) -> &S {
        &self.slope
    }

    pub fn offset(&self) -> &S {
        &self.offset
    }

    pub fn apply(&self, x: &S) -> S {
        self.slope.mul(x).add(&self.offset)
    }

    fn apply_down(&self, x: &S, tau: f64) -> S {
        self.slope.mul(x).round_down(tau).add(&self.offset).round_down(tau)
    }

    fn apply_up(&self, x: &S, tau: f64) -> S {
        self.slope.mul(x).round_up(tau).add(&self.offset).round_up(tau)
    }

    /// Outer enclosure of the image of `i ∩ interior(domain)`.
    fn image(&self, i: &Interval<S>, tau: f64) -> Option<Interval<S>> {
        let j = self.domain.clip(i)?;
        let (a, b) = if self.slope.is_negative() { (j.hi(), j.lo()) } else { (j.lo(), j.hi()) };
        Interval::new(self.apply_down(a, tau), self.apply_up(b, tau))
    }

    /// Outer enclosure of `{x ∈ interior(domain) : slope·x + offset ∈ v}`.
    fn preimage(&self, v: &Interval<S>, tau: f64) -> Option<Interval<S>> {
        let solve_down = |y: &S| y.sub(&self.offset).round_down(tau).div(&self.slope).round_down(tau);
        let solve_up = |y: &S| y.sub(&self.offset).round_up(tau).div(&self.slope).round_up(tau);
        let (lo, hi) = if self.slope.is_negative() {
            // decreasing: the lower preimage endpoint comes from v.hi
            (
                v.hi().sub(&self.offset).round_up(tau).div(&self.slope).round_down(tau),
                v.lo().sub(&self.offset).round_down(tau).div(&self.slope).round_up(tau),
            )
        } else {
            (solve_down(v.lo()), solve_up(v.hi()))
        };
        self.domain.clip(&Interval::new(lo, hi)?)
    }
}

/// Finite list of affine pieces with disjoint interiors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseAffineMap<S> {
    pieces: Vec<AffinePiece<S>>,
}

impl<S: Scalar> PiecewiseAffineMap<S> {
    pub fn new(pieces: Vec<AffinePiece<S>>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidMap("map has no pieces".into()));
        }
        for (i, p) in pieces.iter().enumerate() {
            for (j, q) in pieces.iter().enumerate().skip(i + 1) {
                if p.domain.overlaps(&q.domain) {
                    return Err(Error::InvalidMap(format!("pieces {i} and {j} overlap")));
                }
            }
        }
        Ok(PiecewiseAffineMap { pieces })
    }

    /// `x ↦ slope·x + offset` on all of ℝ.
    pub fn affine(slope: S, offset: S) -> Result<Self> {
        PiecewiseAffineMap::new(alloc::vec![AffinePiece::global(slope, offset)?])
    }

    pub fn pieces(&self) -> &[AffinePiece<S>] {
        &self.pieces
    }

    /// One piece covering ℝ.
    pub fn is_globally_affine(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].domain.is_unbounded()
    }

    pub fn eval(&self, x: &S) -> Option<S> {
        self.pieces.iter().find(|p| p.domain.contains(x)).map(|p| p.apply(x))
    }

    /// Finite domain endpoints, sorted and deduplicated.
    pub fn breakpoints(&self) -> Vec<S> {
        let mut v: Vec<S> = self.pieces.iter().flat_map(|p| p.domain.endpoints().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Every point of the closed interval lies in some piece domain.
    pub fn covers(&self, c: &ClosedInterval<S>) -> bool {
        let mut reach = c.lo().clone();
        loop {
            let mut best: Option<&S> = None;
            for d in self.pieces.iter().map(|p| &p.domain).filter(|d| d.contains(&reach)) {
                match d.hi() {
                    None => return true,
                    Some(h) => {
                        if best.is_none_or(|b| h > b) {
                            best = Some(h);
                        }
                    }
                }
            }
            let Some(next) = best else {
                return false;
            };
            if *next >= *c.hi() {
                return true;
            }
            if *next <= reach {
                return false;
            }
            reach = next.clone();
        }
    }

    /// True when pieces sharing a boundary point agree there.
    pub fn is_continuous_at_breakpoints(&self) -> bool {
        for b in self.breakpoints() {
            let mut vals = self.pieces.iter().filter(|p| p.domain.contains(&b)).map(|p| p.apply(&b));
            if let Some(first) = vals.next() {
                if vals.any(|v| v != first) {
                    return false;
                }
            }
        }
        true
    }

    /// Image of an open set, restricted to the points where the map is
    /// defined. An outer enclosure when `tau > 0`.
    pub fn image(&self, set: &IntervalSet<S>, tau: f64) -> IntervalSet<S> {
        let mut parts = Vec::new();
        let mut glue = Vec::new();
        let breaks = self.breakpoints();
        for c in set.components() {
            for p in &self.pieces {
                if let Some(img) = p.image(c, tau) {
                    parts.push(img);
                }
            }
            for b in breaks.iter().filter(|b| c.contains(b)) {
                if let Some(v) = self.eval(b) {
                    glue.push(v);
                }
            }
        }
        IntervalSet::glued(parts, &glue)
    }

    /// Preimage of an open set. An outer enclosure when `tau > 0`.
    pub fn preimage(&self, set: &IntervalSet<S>, tau: f64) -> IntervalSet<S> {
        let mut parts = Vec::new();
        for v in set.components() {
            for p in &self.pieces {
                if let Some(pre) = p.preimage(v, tau) {
                    parts.push(pre);
                }
            }
        }
        let glue: Vec<S> = self
            .breakpoints()
            .into_iter()
            .filter(|b| self.eval(b).is_some_and(|y| set.contains_point(&y)))
            .collect();
        IntervalSet::glued(parts, &glue)
    }

    /// Every point of every component lies in some piece domain.
    pub fn defined_on(&self, set: &IntervalSet<S>) -> bool {
        set.components().iter().all(|c| self.covers(&ClosedInterval::closure_of(c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn open(a: Rational, b: Rational) -> IntervalSet<Rational> {
        IntervalSet::open(a, b)
    }

    fn tent() -> PiecewiseAffineMap<Rational> {
        PiecewiseAffineMap::new(alloc::vec![
            AffinePiece::new(Domain::bounded(r(0, 1), r(1, 2)).unwrap(), r(2, 1), r(0, 1)).unwrap(),
            AffinePiece::new(Domain::bounded(r(1, 2), r(1, 1)).unwrap(), r(-2, 1), r(2, 1)).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn preimage_examples() {
        let f1 = PiecewiseAffineMap::affine(r(-2, 1), r(2, 1)).unwrap();
        assert_eq!(f1.preimage(&open(r(1, 10), r(2, 10)), 0.0), open(r(9, 10), r(95, 100)));
        let f0 = PiecewiseAffineMap::affine(r(2, 1), r(0, 1)).unwrap();
        assert_eq!(f0.preimage(&open(r(0, 1), r(2, 10)), 0.0), open(r(0, 1), r(1, 10)));
        assert!(tent().preimage(&open(r(3, 2), r(2, 1)), 0.0).is_empty());
    }

    #[test]
    fn tent_preimage_is_glued_at_the_fold() {
        let pre = tent().preimage(&open(r(9, 10), r(11, 10)), 0.0);
        assert_eq!(pre, open(r(45, 100), r(55, 100)));
    }

    #[test]
    fn continuous_image_is_glued() {
        // increasing on both sides of 1/2: image of (0.4, 0.6) is one interval
        let m = PiecewiseAffineMap::new(alloc::vec![
            AffinePiece::new(Domain::new(None, Some(r(1, 2))).unwrap(), r(2, 1), r(0, 1)).unwrap(),
            AffinePiece::new(Domain::new(Some(r(1, 2)), None).unwrap(), r(3, 1), r(-1, 2)).unwrap(),
        ])
        .unwrap();
        assert!(m.is_continuous_at_breakpoints());
        assert_eq!(m.image(&open(r(2, 5), r(3, 5)), 0.0), open(r(4, 5), r(13, 10)));
        assert!(!PiecewiseAffineMap::new(alloc::vec![
            AffinePiece::new(Domain::new(None, Some(r(0, 1))).unwrap(), r(1, 1), r(0, 1)).unwrap(),
            AffinePiece::new(Domain::new(Some(r(0, 1)), None).unwrap(), r(1, 1), r(1, 1)).unwrap(),
        ])
        .unwrap()
        .is_continuous_at_breakpoints());
    }

    #[test]
    fn overlapping_pieces_rejected() {
        let a = AffinePiece::new(Domain::bounded(r(0, 1), r(2, 1)).unwrap(), r(1, 1), r(0, 1)).unwrap();
        let b = AffinePiece::new(Domain::bounded(r(1, 1), r(3, 1)).unwrap(), r(1, 1), r(0, 1)).unwrap();
        assert!(PiecewiseAffineMap::new(alloc::vec![a, b]).is_err());
        assert!(AffinePiece::global(r(0, 1), r(1, 1)).is_err());
    }

    #[test]
    fn coverage() {
        let t = tent();
        assert!(t.covers(&ClosedInterval::new(r(0, 1), r(1, 1)).unwrap()));
        assert!(!t.covers(&ClosedInterval::new(r(0, 1), r(3, 2)).unwrap()));
        assert!(!t.covers(&ClosedInterval::new(r(-1, 2), r(1, 2)).unwrap()));
        assert!(t.covers(&ClosedInterval::point(r(1, 2))));
        let gap = PiecewiseAffineMap::new(alloc::vec![
            AffinePiece::new(Domain::bounded(r(0, 1), r(1, 1)).unwrap(), r(1, 1), r(0, 1)).unwrap(),
            AffinePiece::new(Domain::bounded(r(2, 1), r(3, 1)).unwrap(), r(1, 1), r(0, 1)).unwrap(),
        ])
        .unwrap();
        assert!(!gap.covers(&ClosedInterval::new(r(0, 1), r(3, 1)).unwrap()));
        assert!(gap.covers(&ClosedInterval::new(r(2, 1), r(5, 2)).unwrap()));
        assert!(PiecewiseAffineMap::affine(r(2, 1), r(0, 1))
            .unwrap()
            .covers(&ClosedInterval::new(r(-100, 1), r(100, 1)).unwrap()));
    }

    #[test]
    fn float_enclosures_are_outer() {
        use crate::scalar::Float;
        let f = |v: f64| Float::new(v).unwrap();
        let m = PiecewiseAffineMap::affine(f(3.0), f(0.1)).unwrap();
        let img = m.image(&IntervalSet::open(f(0.1), f(0.2)), 1e-12);
        let c = &img.components()[0];
        assert!(c.lo().get() < 0.4 && c.hi().get() > 0.7);
    }
}
