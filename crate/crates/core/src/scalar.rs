use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};

/// Floating-point scalar the library is generic over.
///
/// Implemented for `f32` and `f64`. All geometry, measure and sampling
/// routines are written against this trait; the crate root exports `f64`
/// aliases for the common case.
pub trait Scalar: Float + FloatConst + Debug + Display + Default + Send + Sync + 'static {
    /// Lossy conversion from `f64`, used for literals and sampler draws.
    fn of(v: f64) -> Self {
        <Self as num_traits::NumCast>::from(v).expect("f64 converts to every float scalar")
    }

    /// Conversion from a natural number (exact up to the mantissa width).
    fn of_u64(n: u64) -> Self {
        <Self as num_traits::NumCast>::from(n).expect("u64 converts to every float scalar")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("float scalars convert to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
