use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// A point or direction in the plane, written `(p, q)` with `q` the vertical coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Vec2<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Vec2 { x, y }
    }

    #[inline]
    pub fn zero() -> Self {
        Vec2::new(T::zero(), T::zero())
    }

    /// Unit vector at angle `theta` from the positive x axis.
    #[inline]
    pub fn from_angle(theta: T) -> Self {
        Vec2::new(theta.cos(), theta.sin())
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3d cross product.
    #[inline]
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    /// Rotation by -90 degrees: the outward normal direction of a counterclockwise edge.
    #[inline]
    pub fn perp_cw(self) -> Self {
        Vec2::new(self.y, -self.x)
    }

    /// `None` for the zero vector.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Reflection across the horizontal axis, `(p, q) -> (p, -q)`.
    #[inline]
    pub fn flip_q(self) -> Self {
        Vec2::new(self.x, -self.y)
    }

    #[inline]
    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    #[inline]
    pub fn approx_eq(self, o: Self, tol: T) -> bool {
        (self.x - o.x).abs() <= tol && (self.y - o.y).abs() <= tol
    }

    pub fn lerp(self, o: Self, t: T) -> Self {
        self + (o - self) * t
    }

    pub fn cast<U: Scalar>(self) -> Vec2<U> {
        Vec2::new(U::lit(self.x.to_f64_lossy()), U::lit(self.y.to_f64_lossy()))
    }
}

impl<T: Scalar> Add for Vec2<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> AddAssign for Vec2<T> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        self.x = self.x + o.x;
        self.y = self.y + o.y;
    }
}

impl<T: Scalar> Sub for Vec2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Neg for Vec2<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Vec2::new(-self.x, -self.y)
    }
}

impl<T: Scalar> Mul<T> for Vec2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl<T: Scalar> Div<T> for Vec2<T> {
    type Output = Self;
    #[inline]
    fn div(self, s: T) -> Self {
        Vec2::new(self.x / s, self.y / s)
    }
}

impl<T: Scalar> From<(T, T)> for Vec2<T> {
    fn from((x, y): (T, T)) -> Self {
        Vec2::new(x, y)
    }
}

impl<T: Scalar> From<[T; 2]> for Vec2<T> {
    fn from([x, y]: [T; 2]) -> Self {
        Vec2::new(x, y)
    }
}
