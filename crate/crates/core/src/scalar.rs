//! Integer scalar abstraction.
//!
//! Every algorithm in this crate works over exact signed integers. The
//! [`Scalar`] trait collects what they need so that `i32`, `i64` and `i128`
//! can all be used; the crate root re-exports `i64` aliases for the common
//! case.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, NumAssign, PrimInt, Signed, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Exact signed integer usable as coefficient, bound and value type.
pub trait Scalar:
    PrimInt
    + Signed
    + Integer
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Hash
    + Debug
    + Display
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Converts a count or index. Panics only if `n` does not fit, which the
    /// callers rule out by construction.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count does not fit the scalar type")
    }

    /// Largest magnitude allowed for intermediate sums built from model data.
    ///
    /// Half of `max_value()`, so that one further addition of an admissible
    /// quantity cannot wrap.
    fn safe_limit() -> Self {
        Self::max_value() >> 1
    }
}

impl<T> Scalar for T where
    T: PrimInt
        + Signed
        + Integer
        + NumAssign
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Hash
        + Debug
        + Display
        + Default
        + Serialize
        + DeserializeOwned
        + Send
        + Sync
        + 'static
{
}

/// Checked sum of products `Σ a_i·b_i`, `None` on overflow.
pub(crate) fn checked_dot<T: Scalar>(a: &[T], b: &[T]) -> Option<T> {
    a.iter()
        .zip(b)
        .try_fold(T::zero(), |acc, (&x, &y)| acc.checked_add(&x.checked_mul(&y)?))
}
