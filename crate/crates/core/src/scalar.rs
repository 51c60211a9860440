//! Scalar abstraction shared by every numeric kernel.
//!
//! Coefficient arrays, transfer matrices and angles are generic over [`Real`],
//! which is implemented for `f32` and `f64`. Tolerances that depend on the
//! precision of the scalar live here so callers never hard-code `1e-9` for a
//! type that cannot resolve it.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + FromStr
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Lossy conversion to `f64`.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }

    /// Tolerance for quantities that should be exact up to accumulated rounding
    /// (normalization checks, probability sums). `1e-9` for `f64`.
    fn loose_tol() -> Self {
        Self::lit(1e-9).max(Self::epsilon() * Self::lit(1e3))
    }

    /// Threshold beyond which a probability sum is considered broken. `1e-6` for `f64`.
    fn consistency_tol() -> Self {
        Self::lit(1e-6).max(Self::epsilon() * Self::lit(1e4))
    }

    /// `2^-n`, exact for every `n` used in practice.
    fn inv_pow2(n: usize) -> Self {
        Self::lit(0.5).powi(n as i32)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Reduces an angle to the half-open interval `(-pi, pi]`.
pub fn wrap_angle<T: Real>(a: T) -> T {
    let two_pi = T::TAU();
    let mut r = a % two_pi;
    if r > T::PI() {
        r -= two_pi;
    } else if r <= -T::PI() {
        r += two_pi;
    }
    r
}
