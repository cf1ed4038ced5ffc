//! Open intervals, finite unions of them, closed intervals and (possibly
//! unbounded) closed piece domains.
//!
//! An [`IntervalSet`] is always normalized: components are sorted, pairwise
//! disjoint, and never overlap. Two components may touch at a point that is
//! not in the set, e.g. `(0,1) ∪ (1,2)`.

use alloc::vec::Vec;
use core::fmt;

use crate::scalar::Scalar;

/// Open interval `(lo, hi)` with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval<S> {
    lo: S,
    hi: S,
}

impl<S: Scalar> Interval<S> {
    /// `None` unless `lo < hi`.
    pub fn new(lo: S, hi: S) -> Option<Self> {
        if lo < hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    /// Open ball `B(center, radius)`.
    pub fn ball(center: &S, radius: &S) -> Option<Self> {
        Interval::new(center.sub(radius), center.add(radius))
    }

    pub fn lo(&self) -> &S {
        &self.lo
    }

    pub fn hi(&self) -> &S {
        &self.hi
    }

    pub fn width(&self) -> S {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> S {
        self.lo.mid(&self.hi)
    }

    pub fn contains(&self, x: &S) -> bool {
        self.lo < *x && *x < self.hi
    }

    pub fn contains_interval(&self, other: &Interval<S>) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval<S>) -> Option<Interval<S>> {
        Interval::new(S::max_of(&self.lo, &other.lo), S::min_of(&self.hi, &other.hi))
    }

    /// Width of the overlap, if positive.
    pub fn overlap(&self, other: &Interval<S>) -> Option<S> {
        self.intersect(other).map(|i| i.width())
    }

    /// The same interval shrunk by `frac` of its width on each side.
    pub fn shrink(&self, frac: &S) -> Option<Interval<S>> {
        let d = self.width().mul(frac);
        Interval::new(self.lo.add(&d), self.hi.sub(&d))
    }
}

impl<S: fmt::Display> fmt::Display for Interval<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Finite union of open intervals. The empty set is representable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalSet<S> {
    parts: Vec<Interval<S>>,
}

impl<S: Scalar> Default for IntervalSet<S> {
    fn default() -> Self {
        IntervalSet::empty()
    }
}

impl<S: Scalar> From<Interval<S>> for IntervalSet<S> {
    fn from(i: Interval<S>) -> Self {
        IntervalSet { parts: alloc::vec![i] }
    }
}

impl<S: Scalar> IntervalSet<S> {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    /// Convenience constructor; empty when `lo >= hi`.
    pub fn open(lo: S, hi: S) -> Self {
        match Interval::new(lo, hi) {
            Some(i) => i.into(),
            None => IntervalSet::empty(),
        }
    }

    /// Normalizes an arbitrary list of open intervals.
    pub fn from_intervals(parts: Vec<Interval<S>>) -> Self {
        Self::glued(parts, &[])
    }

    /// Normalizes `parts`, additionally joining components that touch at a
    /// point listed in `glue` (that point belongs to the set).
    pub fn glued(mut parts: Vec<Interval<S>>, glue: &[S]) -> Self {
        parts.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut out: Vec<Interval<S>> = Vec::with_capacity(parts.len());
        for p in parts {
            if let Some(last) = out.last_mut() {
                let joins = p.lo < last.hi || (p.lo == last.hi && glue.contains(&p.lo));
                if joins {
                    if p.hi > last.hi {
                        last.hi = p.hi;
                    }
                    continue;
                }
            }
            out.push(p);
        }
        IntervalSet { parts: out }
    }

    pub fn components(&self) -> &[Interval<S>] {
        &self.parts
    }

    pub fn into_components(self) -> Vec<Interval<S>> {
        self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn contains_point(&self, x: &S) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn intersect(&self, other: &IntervalSet<S>) -> IntervalSet<S> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a, b) = (&self.parts[i], &other.parts[j]);
            if let Some(x) = a.intersect(b) {
                out.push(x);
            }
            if a.hi <= b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { parts: out }
    }

    pub fn intersect_interval(&self, other: &Interval<S>) -> IntervalSet<S> {
        IntervalSet {
            parts: self.parts.iter().filter_map(|p| p.intersect(other)).collect(),
        }
    }

    pub fn union(&self, other: &IntervalSet<S>) -> IntervalSet<S> {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        IntervalSet::from_intervals(parts)
    }

    /// `other ⊆ self`.
    pub fn contains_set(&self, other: &IntervalSet<S>) -> bool {
        other.parts.iter().all(|o| self.parts.iter().any(|p| p.contains_interval(o)))
    }

    pub fn contains_interval(&self, other: &Interval<S>) -> bool {
        self.parts.iter().any(|p| p.contains_interval(other))
    }

    /// Widest single-component overlap with `other`.
    pub fn max_overlap(&self, other: &IntervalSet<S>) -> Option<S> {
        self.intersect(other).parts.iter().map(|p| p.width()).max()
    }

    /// Interior overlap of width strictly greater than `eps_min`.
    pub fn meets(&self, other: &IntervalSet<S>, eps_min: &S) -> bool {
        self.max_overlap(other).is_some_and(|w| w > *eps_min)
    }

    /// Smallest interval containing the set.
    pub fn hull(&self) -> Option<Interval<S>> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some(Interval { lo: first.lo.clone(), hi: last.hi.clone() })
    }

    pub fn measure(&self) -> S {
        self.parts.iter().fold(S::zero(), |acc, p| acc.add(&p.width()))
    }
}

impl<S: fmt::Display> fmt::Display for IntervalSet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Closed interval `[lo, hi]`, `lo <= hi`; a point when `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedInterval<S> {
    lo: S,
    hi: S,
}

impl<S: Scalar> ClosedInterval<S> {
    pub fn new(lo: S, hi: S) -> Option<Self> {
        if lo <= hi {
            Some(ClosedInterval { lo, hi })
        } else {
            None
        }
    }

    pub fn point(x: S) -> Self {
        ClosedInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &S {
        &self.lo
    }

    pub fn hi(&self) -> &S {
        &self.hi
    }

    pub fn contains(&self, x: &S) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn closure_of(i: &Interval<S>) -> Self {
        ClosedInterval { lo: i.lo.clone(), hi: i.hi.clone() }
    }
}

/// Closed domain of an affine piece; `None` endpoints are infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Domain<S> {
    lo: Option<S>,
    hi: Option<S>,
}

impl<S: Scalar> Domain<S> {
    /// `None` unless the interior is nonempty.
    pub fn new(lo: Option<S>, hi: Option<S>) -> Option<Self> {
        match (&lo, &hi) {
            (Some(a), Some(b)) if a >= b => None,
            _ => Some(Domain { lo, hi }),
        }
    }

    pub fn everywhere() -> Self {
        Domain { lo: None, hi: None }
    }

    pub fn bounded(lo: S, hi: S) -> Option<Self> {
        Domain::new(Some(lo), Some(hi))
    }

    pub fn lo(&self) -> Option<&S> {
        self.lo.as_ref()
    }

    pub fn hi(&self) -> Option<&S> {
        self.hi.as_ref()
    }

    pub fn is_unbounded(&self) -> bool {
        self.lo.is_none() && self.hi.is_none()
    }

    pub fn contains(&self, x: &S) -> bool {
        self.lo.as_ref().is_none_or(|l| l <= x) && self.hi.as_ref().is_none_or(|h| x <= h)
    }

    /// `i ∩ interior(self)`.
    pub fn clip(&self, i: &Interval<S>) -> Option<Interval<S>> {
        let lo = match &self.lo {
            Some(l) => S::max_of(l, &i.lo),
            None => i.lo.clone(),
        };
        let hi = match &self.hi {
            Some(h) => S::min_of(h, &i.hi),
            None => i.hi.clone(),
        };
        Interval::new(lo, hi)
    }

    /// Interiors overlap.
    pub fn overlaps(&self, other: &Domain<S>) -> bool {
        let lo = match (&self.lo, &other.lo) {
            (Some(a), Some(b)) => Some(S::max_of(a, b)),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        let hi = match (&self.hi, &other.hi) {
            (Some(a), Some(b)) => Some(S::min_of(a, b)),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        match (lo, hi) {
            (Some(l), Some(h)) => l < h,
            _ => true,
        }
    }

    /// Finite endpoints.
    pub fn endpoints(&self) -> impl Iterator<Item = &S> {
        self.lo.iter().chain(self.hi.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn set(parts: &[(i64, i64)], den: i64) -> IntervalSet<Rational> {
        IntervalSet::from_intervals(
            parts.iter().map(|&(a, b)| Interval::new(r(a, den), r(b, den)).unwrap()).collect(),
        )
    }

    #[test]
    fn normalization_merges_overlaps_only() {
        let s = set(&[(5, 8), (0, 2), (1, 3), (3, 4)], 10);
        assert_eq!(s, set(&[(0, 3), (3, 4), (5, 8)], 10));
        let g = IntervalSet::glued(s.clone().into_components(), &[r(3, 10)]);
        assert_eq!(g, set(&[(0, 4), (5, 8)], 10));
    }

    #[test]
    fn intersection_and_containment() {
        let a = set(&[(0, 4), (6, 10)], 10);
        let b = set(&[(3, 7)], 10);
        assert_eq!(a.intersect(&b), set(&[(3, 4), (6, 7)], 10));
        assert!(a.contains_set(&set(&[(1, 2), (7, 9)], 10)));
        assert!(!a.contains_set(&b));
        assert!(a.meets(&b, &Rational::zero()));
        assert!(!a.meets(&b, &r(1, 10)));
        assert!(!set(&[(0, 1)], 1).meets(&set(&[(1, 2)], 1), &Rational::zero()));
    }

    #[test]
    fn touching_open_sets_are_not_a_cover() {
        let b = set(&[(0, 1), (1, 2)], 1);
        assert!(!b.contains_set(&set(&[(1, 3)], 2)));
    }

    #[test]
    fn domains() {
        let d = Domain::bounded(r(0, 1), r(1, 2)).unwrap();
        assert!(d.contains(&r(1, 2)));
        assert!(!d.contains(&r(3, 4)));
        assert!(Domain::<Rational>::bounded(r(1, 1), r(1, 1)).is_none());
        let e = Domain::new(Some(r(1, 2)), None).unwrap();
        assert!(!d.overlaps(&e));
        assert!(Domain::everywhere().overlaps(&e));
        let i = Interval::new(r(1, 4), r(3, 4)).unwrap();
        assert_eq!(e.clip(&i), Interval::new(r(1, 2), r(3, 4)));
    }
}
