//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the state algebra, channels and correlation functions are generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Slack allowed when validating caller input (unit vectors, probability sums).
    fn input_tolerance() -> Self;
}

impl Real for f32 {
    fn input_tolerance() -> Self {
        1e-4
    }
}

impl Real for f64 {
    fn input_tolerance() -> Self {
        1e-9
    }
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}
