//! Scalar abstraction shared by every geometric type in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point type usable for pixel coordinates.
///
/// Implemented for `f32` and `f64`. Everything that measures positions,
/// lengths or ratios is generic over this trait; counts and timestamps are
/// plain integers.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts an `f64` literal. Panics only if the target type cannot
    /// represent finite literals, which never happens for `f32`/`f64`.
    #[inline]
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("finite literal")
    }

    #[inline]
    fn from_usize_lossy(value: usize) -> Self {
        Self::from_usize(value).expect("usize fits in a float")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
