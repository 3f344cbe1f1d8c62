//! Coefficient rings.
//!
//! Lie-algebra elements, characters and the exact rank routines are generic
//! over [`Scalar`]. Structure constants are always integers, so the exact
//! rational type is the default everywhere; floating point instantiations are
//! supported for characters with irrational-looking slopes and for quick
//! experiments.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num};

pub trait Scalar:
    Num + Neg<Output = Self> + Clone + PartialOrd + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Whether equality tests on this type are exact.
    const EXACT: bool;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits the scalar type")
    }

    /// Treat values within the type's tolerance of zero as zero.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-5
    }
}

/// Converts an exact rational to `i64` when it is integral and small enough.
pub fn rational_to_i64(r: &BigRational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    let n: BigInt = r.to_integer();
    i64::try_from(n).ok()
}

/// Sign of a scalar: -1, 0 or 1.
pub fn signum<T: Scalar>(x: &T) -> i32 {
    if x.is_negligible() {
        0
    } else if *x > T::zero() {
        1
    } else {
        -1
    }
}
