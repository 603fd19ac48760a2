//! Floating-point abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the optimizer and objectives are generic over.
///
/// Implemented for `f32` and `f64`. Random draws are always produced in
/// `f64` (53-bit construction) and narrowed through [`Scalar::of`], so the
/// draw sequence for a given seed is the same whichever scalar is used.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant or draw into this scalar.
    #[inline]
    fn of(value: f64) -> Self {
        // FromPrimitive for f32/f64 never fails on a finite or infinite f64
        Self::from_f64(value).expect("f64 is representable")
    }

    /// Converts a count (iteration index, element index, ...) into this scalar.
    #[inline]
    fn of_usize(value: usize) -> Self {
        Self::of(value as f64)
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Orders two fitness values for minimization, NaN sorting last.
#[inline]
pub(crate) fn fitness_cmp<T: Scalar>(a: T, b: T) -> std::cmp::Ordering {
    match (a.is_nan(), b.is_nan()) {
        (true, true) => std::cmp::Ordering::Equal,
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        (false, false) => a.partial_cmp(&b).expect("non-NaN values compare"),
    }
}
