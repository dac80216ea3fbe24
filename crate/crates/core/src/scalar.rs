//! Scalar abstraction shared by every geometric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the geometry is generic over (`f32` or `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance for boundary and equality predicates on unit-scale data.
    const DEFAULT_TOL: Self;
    /// Abscissae closer than this are merged into a single node.
    const NODE_EPS: Self;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    const DEFAULT_TOL: Self = 1e-4;
    const NODE_EPS: Self = 1e-6;
}

impl Scalar for f64 {
    const DEFAULT_TOL: Self = 1e-9;
    const NODE_EPS: Self = 1e-12;
}

/// Absolute tolerance used by predicates; `Tol::default()` is the scalar's default.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tol<T>(pub T);

impl<T: Scalar> Default for Tol<T> {
    fn default() -> Self {
        Tol(T::DEFAULT_TOL)
    }
}

impl<T: Scalar> Tol<T> {
    pub fn new(value: T) -> Self {
        assert!(value > T::zero(), "tolerance must be positive");
        Tol(value)
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }

    /// `|a - b| <= tol * max(1, scale)`.
    #[inline]
    pub fn eq_scaled(self, a: T, b: T, scale: T) -> bool {
        (a - b).abs() <= self.0 * scale.abs().max(T::one())
    }

    #[inline]
    pub fn eq(self, a: T, b: T) -> bool {
        (a - b).abs() <= self.0
    }
}
