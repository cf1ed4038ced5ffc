//! Deterministic low-discrepancy sampling.

use crate::interval::Interval;
use crate::scalar::Scalar;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Additive golden-ratio (Weyl) sequence on `[0, 1)`, offset by a seed.
/// Values are dyadic rationals with 32 fractional bits, so they are exact
/// in both numeric backends.
#[derive(Clone, Debug)]
pub struct Weyl {
    state: u64,
}

impl Weyl {
    pub fn new(seed: u64) -> Self {
        Weyl { state: seed.wrapping_mul(GOLDEN) }
    }

    pub fn next_unit<S: Scalar>(&mut self) -> S {
        self.state = self.state.wrapping_add(GOLDEN);
        let k = (self.state >> 32) as i64;
        S::ratio(k, 1i64 << 32)
    }

    /// A point strictly inside `i`.
    pub fn next_in<S: Scalar>(&mut self, i: &Interval<S>) -> S {
        loop {
            let t: S = self.next_unit();
            if t.is_zero() {
                continue;
            }
            return i.lo().add(&i.width().mul(&t));
        }
    }
}
