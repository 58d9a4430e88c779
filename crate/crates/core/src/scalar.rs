//! Floating-point scalar abstraction shared by every numeric type in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar backing all complex amplitudes: `f32` or `f64`.
///
/// The tolerance hooks let invariant checks scale with the precision of the
/// scalar; the `f64` values are the ones the paper-level results are held to.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Default + Debug + Display + Sum + Send + Sync + 'static
{
    /// Tolerance for state invariants: norm, trace, Hermiticity, positivity.
    fn state_tol() -> Self;
    /// Tolerance for operator identities such as `P² = P` or `ΣP = I`.
    fn op_tol() -> Self;
    /// Tolerance for unit-vector checks on rotation axes.
    fn axis_tol() -> Self;

    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Lossy conversion to `f64`, used for reporting and sampling.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn state_tol() -> Self {
        1e-10
    }
    fn op_tol() -> Self {
        1e-9
    }
    fn axis_tol() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn state_tol() -> Self {
        1e-4
    }
    fn op_tol() -> Self {
        1e-4
    }
    fn axis_tol() -> Self {
        1e-6
    }
}

/// Complex zero.
#[inline]
pub fn c_zero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Complex one.
#[inline]
pub fn c_one<T: Scalar>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// Real number lifted to a complex value.
#[inline]
pub fn c_real<T: Scalar>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// `ω^k` with `ω = e^{i2π/3}`; `k` may be negative.
pub fn omega_pow<T: Scalar>(k: i64) -> Complex<T> {
    let r = k.rem_euclid(3);
    let angle = T::lit(2.0) * T::PI() * T::lit(r as f64) / T::lit(3.0);
    Complex::from_polar(T::one(), angle)
}

/// `ω = e^{i2π/3}`.
pub fn omega<T: Scalar>() -> Complex<T> {
    omega_pow(1)
}
