//! Numeric backends.
//!
//! Everything in the crate is generic over [`Scalar`]. Two backends exist:
//! [`Rational`] (exact, the default) and [`Float`], an `f64` wrapper whose
//! enclosure endpoints are pushed outward by a margin `tau` after every
//! arithmetic operation so that computed images remain supersets of the
//! true ones.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Ordered field operations needed by the interval machinery.
pub trait Scalar: Clone + Ord + fmt::Debug + fmt::Display {
    /// True for backends that never round.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `num / den`; `den` must be nonzero.
    fn ratio(num: i64, den: i64) -> Self;
    /// Exact conversion of a finite double (rational backend) or identity.
    fn from_f64(v: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Division; `rhs` must be nonzero.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Lower endpoint after one operation, widened by `tau`.
    fn round_down(&self, tau: f64) -> Self;
    /// Upper endpoint after one operation, widened by `tau`.
    fn round_up(&self, tau: f64) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    fn mid(&self, other: &Self) -> Self {
        self.add(other).div(&Self::from_i64(2))
    }

    /// `2^-k`.
    fn dyadic(k: u32) -> Self {
        let mut v = Self::one();
        let half = Self::ratio(1, 2);
        for _ in 0..k {
            v = v.mul(&half);
        }
        v
    }

    /// `1 / n` for positive `n`.
    fn recip_usize(n: usize) -> Self {
        Self::one().div(&Self::from_i64(n as i64))
    }

    fn min_of(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    fn max_of(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v)
    }

    fn to_f64(&self) -> f64 {
        // numerator/denominator may overflow f64 individually
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                let shift = self.denom().bits().saturating_sub(60) as usize;
                let n = (self.numer() >> shift).to_f64().unwrap_or(f64::NAN);
                let d = (self.denom() >> shift).to_f64().unwrap_or(f64::NAN);
                n / d
            }
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn round_down(&self, _tau: f64) -> Self {
        self.clone()
    }

    fn round_up(&self, _tau: f64) -> Self {
        self.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Finite `f64` with a total order.
#[derive(Clone, Copy)]
pub struct Float(f64);

impl Float {
    /// Rejects NaN; infinities are kept (they only arise from overflow).
    pub fn new(v: f64) -> Option<Self> {
        if v.is_nan() {
            None
        } else {
            Some(Float(if v == 0.0 { 0.0 } else { v }))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    fn wrap(v: f64) -> Self {
        Float(if v == 0.0 { 0.0 } else { v })
    }

    fn margin(&self, tau: f64) -> f64 {
        let a = if self.0 < 0.0 { -self.0 } else { self.0 };
        tau * if a > 1.0 { a } else { 1.0 }
    }
}

impl PartialEq for Float {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Float {}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Float {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Scalar for Float {
    const EXACT: bool = false;

    fn zero() -> Self {
        Float(0.0)
    }

    fn one() -> Self {
        Float(1.0)
    }

    fn from_i64(v: i64) -> Self {
        Float(v as f64)
    }

    fn ratio(num: i64, den: i64) -> Self {
        Float::wrap(num as f64 / den as f64)
    }

    fn from_f64(v: f64) -> Option<Self> {
        Float::new(v)
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn add(&self, rhs: &Self) -> Self {
        Float::wrap(self.0 + rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Float::wrap(self.0 - rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Float::wrap(self.0 * rhs.0)
    }

    fn div(&self, rhs: &Self) -> Self {
        Float::wrap(self.0 / rhs.0)
    }

    fn neg(&self) -> Self {
        Float::wrap(-self.0)
    }

    fn round_down(&self, tau: f64) -> Self {
        Float::wrap(self.0 - self.margin(tau))
    }

    fn round_up(&self, tau: f64) -> Self {
        Float::wrap(self.0 + self.margin(tau))
    }
}

#[cfg(test)]
mod tests {
    use super::{Float, Rational, Scalar};

    #[test]
    fn rational_is_exact() {
        let a = Rational::ratio(1, 3);
        let b = a.add(&a).add(&a);
        assert_eq!(b, Rational::one());
        assert_eq!(a.round_up(0.5), a);
        assert_eq!(Rational::dyadic(3), Rational::ratio(1, 8));
    }

    #[test]
    fn float_widens_outward() {
        let x = Float::new(3.0).unwrap();
        assert!(x.round_down(1e-12) < x);
        assert!(x.round_up(1e-12) > x);
        assert!(Float::new(f64::NAN).is_none());
        assert_eq!(Float::new(-0.0).unwrap(), Float::zero());
    }

    #[test]
    fn huge_rational_converts() {
        let big = Rational::dyadic(2000);
        let v = big.to_f64();
        assert!((0.0..1e-300).contains(&v));
        assert_eq!(Rational::ratio(3, 4).to_f64(), 0.75);
    }
}
