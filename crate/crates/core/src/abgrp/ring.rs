//! Integer backends for the elimination routines.
//!
//! Every routine in [`super::matrix`] is written once against [`Ring`] and
//! runs first on checked `i64`. When an intermediate leaves the `i64` range
//! the routine reports [`Overflow`] and the caller reruns it on [`BigInt`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt::Debug;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) type RResult<T> = Result<T, Overflow>;

pub(crate) trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_i64(&self) -> Option<i64>;
    fn to_bigint(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `|self| < |other|`
    fn abs_lt(&self, other: &Self) -> bool;
    fn add(&self, o: &Self) -> RResult<Self>;
    fn sub(&self, o: &Self) -> RResult<Self>;
    fn mul(&self, o: &Self) -> RResult<Self>;
    fn neg(&self) -> RResult<Self>;
    /// Floor-style quotient: `self - q*o` lies in `[0, |o|)`.
    fn quot(&self, o: &Self) -> RResult<Self>;
    fn divides(&self, o: &Self) -> bool;

    /// `self - q * o`
    #[inline]
    fn sub_mul(&self, q: &Self, o: &Self) -> RResult<Self> {
        self.sub(&q.mul(o)?)
    }
}

impl Ring for i64 {
    #[inline]
    fn zero() -> Self {
        0
    }
    #[inline]
    fn from_i64(v: i64) -> Self {
        v
    }
    #[inline]
    fn to_i64(&self) -> Option<i64> {
        Some(*self)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn is_negative(&self) -> bool {
        *self < 0
    }
    #[inline]
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    #[inline]
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    #[inline]
    fn add(&self, o: &Self) -> RResult<Self> {
        self.checked_add(*o).ok_or(Overflow)
    }
    #[inline]
    fn sub(&self, o: &Self) -> RResult<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    #[inline]
    fn mul(&self, o: &Self) -> RResult<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    #[inline]
    fn neg(&self) -> RResult<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    #[inline]
    fn quot(&self, o: &Self) -> RResult<Self> {
        self.checked_div_euclid(*o).ok_or(Overflow)
    }
    #[inline]
    fn divides(&self, o: &Self) -> bool {
        if *self == 0 {
            return *o == 0;
        }
        o.checked_rem(*self).is_none_or(|r| r == 0)
    }
    #[inline]
    fn sub_mul(&self, q: &Self, o: &Self) -> RResult<Self> {
        let p = (*q as i128) * (*o as i128);
        let r = (*self as i128) - p;
        i64::try_from(r).map_err(|_| Overflow)
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude() == &num_bigint::BigUint::from(1u8)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn add(&self, o: &Self) -> RResult<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> RResult<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> RResult<Self> {
        Ok(self * o)
    }
    fn neg(&self) -> RResult<Self> {
        Ok(-self)
    }
    fn quot(&self, o: &Self) -> RResult<Self> {
        // Euclidean: remainder in [0, |o|)
        let (q, r) = self.div_mod_floor(o);
        if Signed::is_negative(&r) {
            Ok(q + 1)
        } else {
            Ok(q)
        }
    }
    fn divides(&self, o: &Self) -> bool {
        if Zero::is_zero(self) {
            return Zero::is_zero(o);
        }
        Zero::is_zero(&o.mod_floor(self))
    }
}
