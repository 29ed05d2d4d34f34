//! Scalar abstraction: the numerical kernels are generic over the
//! floating-point type.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar usable by the numerical kernels: f32 or f64.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossless conversion from an f64 literal. Panics only if the target
    /// type cannot represent any approximation of `x`, which cannot happen
    /// for finite literals and f32/f64.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("literal out of range for scalar type")
    }

    fn to_f64_lossy(self) -> f64;
}

impl Real for f32 {
    fn to_f64_lossy(self) -> f64 {
        self as f64
    }
}

impl Real for f64 {
    fn to_f64_lossy(self) -> f64 {
        self
    }
}
