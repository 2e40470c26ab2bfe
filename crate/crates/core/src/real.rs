//! Scalar abstraction for the geometric layer.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the hyperbolic layer is generic over: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Shorthand for converting an `f64` constant into `Self`.
    #[inline]
    fn c(v: f64) -> Self {
        Self::from_f64(v).expect("constant representable in scalar type")
    }

    /// Determinant tolerance for unimodularity checks at this precision.
    #[inline]
    fn det_tol() -> Self {
        Self::c(1e-12).max(Self::epsilon() * Self::c(1e4))
    }
}

impl Real for f32 {}
impl Real for f64 {}
