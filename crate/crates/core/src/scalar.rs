//! The coefficient field.
//!
//! Everything in this crate is generic over [`Scalar`], an exact field with
//! a faithful rational view. `BigRational` is the workhorse; `Rational64`
//! also works as long as the numbers stay small.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// An exact field of characteristic zero embedded in the rationals.
///
/// Floating point types are deliberately not implementors: centrality,
/// kernels and ideal membership are all decided by exact equality with zero.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    fn to_big_rational(&self) -> BigRational;

    /// `None` when the value does not fit the representation.
    fn from_big_rational(q: &BigRational) -> Option<Self>;

    fn is_negative(&self) -> bool {
        Signed::is_negative(&self.to_big_rational())
    }

    fn from_int(k: i64) -> Self {
        Self::from_i64(k).expect("every field of characteristic zero contains the integers")
    }
}

impl Scalar for BigRational {
    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_big_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

impl Scalar for Ratio<i64> {
    fn to_big_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn from_big_rational(q: &BigRational) -> Option<Self> {
        Some(Ratio::new(q.numer().to_i64()?, q.denom().to_i64()?))
    }
}

pub(crate) fn pow<T: Scalar>(base: &T, exp: u32) -> T {
    let mut acc = T::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}
