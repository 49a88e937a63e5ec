//! Real scalar abstraction for the numeric core.
//!
//! All matrix and metric computations are generic over a floating-point
//! scalar so the same code runs at `f32` and `f64` precision. The default
//! tolerances shipped with the library are sized for `f64`; the concrete
//! aliases at the crate root pin that choice.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable as the real/imaginary component type.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`; total for the supported types.
    fn real(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite f64 converts to Scalar")
    }

    /// Widening conversion to `f64` for reporting and serialization.
    fn as_f64(self) -> f64 {
        <Self as ToPrimitive>::to_f64(&self).expect("Scalar converts to f64")
    }

    /// Construction/algorithm tolerance calibrated for f64, widened to
    /// 100 epsilon when the scalar cannot resolve the calibrated value
    /// (so the f32 instantiation stays usable; at f64 the calibrated
    /// value always dominates).
    fn tolerance(calibrated: f64) -> Self {
        Self::real(calibrated).max(Self::epsilon() * Self::real(100.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
