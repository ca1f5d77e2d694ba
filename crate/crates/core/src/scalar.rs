//! Scalar abstraction for coordinates and lengths.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point type used for vertex coordinates, edge lengths and costs.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Converts from `f64`, panicking only for types that cannot represent finite `f64`s.
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("scalar conversion from f64")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Tolerance used for `<=` comparisons between sums of lengths of magnitude `scale`.
    fn tolerance(scale: Self) -> Self {
        Self::epsilon() * Self::of(64.0) * scale.abs().max(Self::one())
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
