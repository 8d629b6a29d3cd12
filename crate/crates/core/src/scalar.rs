//! Scalar abstraction shared by every model in this crate.

use core::fmt::{Debug, Display};

use num_traits::{FromPrimitive, ToPrimitive};

/// Floating-point scalar the models compute in.
///
/// `f64` is the working default (see the `*64` aliases at the crate root);
/// `f32` satisfies the bound too for callers that trade precision for
/// storage. The `nalgebra::RealField` bound is what lets the frame oracle
/// assemble and factor its stiffness matrices generically.
pub trait Float:
    Copy + Send + Sync + Debug + Display + FromPrimitive + ToPrimitive + nalgebra::RealField
{
    /// Machine epsilon of the concrete type, for residual thresholds.
    fn machine_epsilon() -> Self;
}

impl Float for f32 {
    fn machine_epsilon() -> Self {
        f32::EPSILON
    }
}

impl Float for f64 {
    fn machine_epsilon() -> Self {
        f64::EPSILON
    }
}

/// Converts an `f64` model constant into the working scalar.
#[inline]
pub(crate) fn lit<T: Float>(value: f64) -> T {
    T::from_f64(value).expect("model constants fit any supported scalar")
}

/// Lossy view of a scalar for error payloads.
#[inline]
pub(crate) fn as_f64<T: Float>(value: T) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// True when the value is finite and strictly positive; false for NaN.
#[inline]
pub(crate) fn is_positive<T: Float>(value: T) -> bool {
    value.is_finite() && value > T::zero()
}

/// Absolute value, spelled out to stay unambiguous across the trait bounds.
#[inline]
pub(crate) fn abs<T: Float>(value: T) -> T {
    if value < T::zero() {
        -value
    } else {
        value
    }
}

/// Larger of two scalars.
#[inline]
pub(crate) fn max<T: Float>(a: T, b: T) -> T {
    if a < b {
        b
    } else {
        a
    }
}
