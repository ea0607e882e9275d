//! Scalar abstraction shared by the polynomial layer.
//!
//! Context-free number types (`BigInt`, `BigRational`, machine integers) get
//! [`Scalar`] through a blanket impl over `num_traits::Num`. Ring elements whose
//! modulus is only known at runtime, such as [`GrElem`](crate::GrElem),
//! implement it by hand and produce their identities from an existing element.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Zero};

pub trait Scalar:
    Clone + PartialEq + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// Additive identity of the ring `self` lives in.
    fn zero_like(&self) -> Self;
    /// Multiplicative identity of the ring `self` lives in.
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;

    /// Image of the integer `n` in the ring of `self`.
    fn int_like(&self, n: i64) -> Self {
        let mut acc = self.zero_like();
        let mut base = self.one_like();
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc + base.clone();
            }
            base = base.clone() + base;
            k >>= 1;
        }
        if n < 0 {
            -acc
        } else {
            acc
        }
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// Scalars with a partial inverse; `try_inv` is `None` exactly on non-units.
pub trait FieldScalar: Scalar {
    fn try_inv(&self) -> Option<Self>;
}

impl<T> Scalar for T
where
    T: Num + Clone + Debug + Neg<Output = T>,
{
    fn zero_like(&self) -> Self {
        T::zero()
    }

    fn one_like(&self) -> Self {
        T::one()
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl FieldScalar for BigRational {
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Exact integer division marker used by fraction-free elimination.
pub trait ExactDiv: Scalar {
    fn exact_div(&self, other: &Self) -> Self;
}

impl ExactDiv for BigInt {
    fn exact_div(&self, other: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % other)));
        self / other
    }
}

impl ExactDiv for BigRational {
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
}
