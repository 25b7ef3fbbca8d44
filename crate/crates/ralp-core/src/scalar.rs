//! Scalar abstraction for the numeric layer: every metric, loss and
//! embedding routine is generic over [`Scalar`] so the same code runs in
//! f32 or f64 precision.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar: f32 or f64.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Convert from f64, panicking only on values no float can represent.
    fn of(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("f64 value representable as scalar")
    }

    /// Widen to f64 for reporting and serialization.
    fn widen(self) -> f64 {
        self.to_f64().expect("scalar representable as f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
