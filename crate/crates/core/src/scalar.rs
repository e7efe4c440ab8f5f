//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

/// Floating point scalar the fitting and testing code is generic over: `f32` or `f64`.
///
/// Tolerances quoted throughout the documentation assume `f64`; `f32` works but
/// only to single-precision accuracy.
pub trait Real: Float + FromPrimitive + Sum<Self> + Debug + Display + Default + Send + Sync + 'static {
    /// Converts an `f64` literal into this scalar.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count into this scalar.
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Relative magnitude below which residuals are treated as rounding noise.
///
/// Expressed in units of machine epsilon so it scales with the scalar type.
pub(crate) const NOISE_ULPS: f64 = 1.0e4;

/// Absolute rounding-noise floor for quantities of typical magnitude `scale`.
pub(crate) fn noise_floor<T: Real>(scale: T) -> T {
    T::epsilon() * T::lit(NOISE_ULPS) * scale.abs()
}
