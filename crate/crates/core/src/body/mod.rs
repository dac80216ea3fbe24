//! Planar convex bodies containing the origin in their interior, with their
//! support function, gauge, polar body, faces and normal cones.
//!
//! For a body `K`, the support function `φ_K(x) = max{x·y : y ∈ K}` is the
//! surface tension of the anisotropic perimeter and the gauge
//! `φ*_K(x) = min{t ≥ 0 : x ∈ tK}` is the support function of the polar
//! body `K* = {x : φ_K(x) ≤ 1}`.

mod face;
mod hausdorff;
mod polygon;
mod polytope;

pub use face::{Face, NormalSet};
pub use hausdorff::hausdorff_distance;
pub use polygon::{point_segment_distance, ConvexPolygon};
pub use polytope::Polytope;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tol};
use crate::vec2::Vec2;

/// Axis-aligned ellipse `{x²/a² + y²/b² ≤ 1}` centered at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ellipse<T> {
    pub a: T,
    pub b: T,
}

/// A planar convex body with the origin in its interior.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ConvexBody<T> {
    Polygon(ConvexPolygon<T>),
    Ellipse(Ellipse<T>),
}

/// Outcome of the additivity test `φ(y1) + φ(y2) = φ(y1 + y2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Additivity<T> {
    pub additive: bool,
    /// `φ(y1) + φ(y2) - φ(y1 + y2) ≥ 0`.
    pub defect: T,
    /// A boundary point where both supports are attained.
    pub witness: Option<Vec2<T>>,
}

impl<T: Scalar> ConvexBody<T> {
    /// Polygonal body from its vertices; the origin must be strictly inside.
    pub fn polygon(vertices: &[Vec2<T>]) -> Result<Self> {
        Self::polygon_with_tol(vertices, Tol::default())
    }

    pub fn polygon_with_tol(vertices: &[Vec2<T>], tol: Tol<T>) -> Result<Self> {
        let poly = ConvexPolygon::from_vertices(vertices, tol)?;
        Self::from_polygon(poly, tol)
    }

    /// Wraps a canonical polygon after checking that the origin is interior.
    pub fn from_polygon(poly: ConvexPolygon<T>, tol: Tol<T>) -> Result<Self> {
        let scale = poly.max_abs_coord().max(T::one());
        let inside = (0..poly.len()).all(|i| poly.edge_normal(i).dot(poly.vertex(i)) > tol.get() * scale);
        if !inside {
            return Err(Error::OriginNotInterior);
        }
        Ok(ConvexBody::Polygon(poly))
    }

    pub fn ellipse(a: T, b: T) -> Result<Self> {
        if !(a > T::zero() && b > T::zero() && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidBody(format!("ellipse semi-axes must be positive, got ({a}, {b})")));
        }
        Ok(ConvexBody::Ellipse(Ellipse { a, b }))
    }

    /// The square `[-h, h]²`.
    pub fn square(h: T) -> Self {
        let v = [Vec2::new(-h, -h), Vec2::new(h, -h), Vec2::new(h, h), Vec2::new(-h, h)];
        Self::polygon(&v).expect("valid square")
    }

    /// The diamond `conv{(±h, 0), (0, ±h)}`.
    pub fn diamond(h: T) -> Self {
        let z = T::zero();
        let v = [Vec2::new(h, z), Vec2::new(z, h), Vec2::new(-h, z), Vec2::new(z, -h)];
        Self::polygon(&v).expect("valid diamond")
    }

    /// Regular `n`-gon with vertices on the circle of radius `r`, first vertex at angle `phase`.
    pub fn regular(n: usize, r: T, phase: T) -> Self {
        assert!(n >= 3);
        let tau = T::TAU();
        let v: Vec<_> =
            (0..n).map(|k| Vec2::from_angle(phase + tau * T::lit(k as f64) / T::lit(n as f64)) * r).collect();
        Self::polygon(&v).expect("valid regular polygon")
    }

    pub fn as_polygon(&self) -> Option<&ConvexPolygon<T>> {
        match self {
            ConvexBody::Polygon(p) => Some(p),
            ConvexBody::Ellipse(_) => None,
        }
    }

    /// Support function `φ_K(x)`.
    pub fn support(&self, x: Vec2<T>) -> T {
        match self {
            ConvexBody::Polygon(p) => p.vertices().iter().map(|v| v.dot(x)).fold(T::neg_infinity(), T::max),
            ConvexBody::Ellipse(e) => (e.a * x.x).hypot(e.b * x.y),
        }
    }

    /// Gauge `φ*_K(x)`, the support function of the polar body.
    pub fn gauge(&self, x: Vec2<T>) -> T {
        match self {
            ConvexBody::Polygon(p) => polar_vertices(p).iter().map(|w| w.dot(x)).fold(T::neg_infinity(), T::max),
            ConvexBody::Ellipse(e) => (x.x / e.a).hypot(x.y / e.b),
        }
    }

    /// Polar body `K* = {y : y·x ≤ 1 for all x ∈ K}`.
    pub fn polar(&self) -> Self {
        match self {
            ConvexBody::Polygon(p) => {
                let w = polar_vertices(p);
                let poly = ConvexPolygon::hull(&w, Tol::default()).expect("polar of a body is a body");
                ConvexBody::Polygon(poly)
            }
            ConvexBody::Ellipse(e) => ConvexBody::Ellipse(Ellipse { a: e.a.recip(), b: e.b.recip() }),
        }
    }

    /// Radial projection of a nonzero direction onto `∂K`.
    pub fn boundary_point(&self, dir: Vec2<T>) -> Vec2<T> {
        dir / self.gauge(dir)
    }

    fn check_on_boundary(&self, x: Vec2<T>, tol: Tol<T>) -> Result<()> {
        let g = self.gauge(x);
        if (g - T::one()).abs() > tol.get() {
            return Err(Error::NotOnBoundary { gauge: g.to_f64_lossy() });
        }
        Ok(())
    }

    /// Subdifferential of the gauge at a boundary point `x0`, i.e. the face
    /// `{y ∈ ∂K* : y·x0 = 1}` of the polar body.
    pub fn subdifferential_face(&self, x0: Vec2<T>, tol: Tol<T>) -> Result<Face<T>> {
        self.check_on_boundary(x0, tol)?;
        match self {
            ConvexBody::Polygon(p) => {
                let polar = ConvexPolygon::hull(&polar_vertices(p), Tol::default()).expect("polar");
                Ok(argmax_face(&polar, x0, tol))
            }
            ConvexBody::Ellipse(e) => Ok(Face::Point(Vec2::new(x0.x / (e.a * e.a), x0.y / (e.b * e.b)))),
        }
    }

    /// Whether `y` belongs to the positive cone `C*_K(z)` generated by the
    /// subdifferential of the gauge at the boundary point `z`; equivalently
    /// `φ_K(y) = y·z`.
    pub fn cone_contains(&self, z: Vec2<T>, y: Vec2<T>, tol: Tol<T>) -> Result<bool> {
        self.check_on_boundary(z, tol)?;
        Ok(tol.eq_scaled(self.support(y), y.dot(z), y.norm()))
    }

    /// The set `Z_K(y)` of boundary points where `φ_K(y)` is attained.
    pub fn maximizer_set(&self, y: Vec2<T>, tol: Tol<T>) -> Result<Face<T>> {
        if y.norm() == T::zero() {
            return Err(Error::ZeroDirection);
        }
        match self {
            ConvexBody::Polygon(p) => Ok(argmax_face(p, y, tol)),
            ConvexBody::Ellipse(e) => {
                let s = self.support(y);
                Ok(Face::Point(Vec2::new(e.a * e.a * y.x / s, e.b * e.b * y.y / s)))
            }
        }
    }

    /// Additivity of the support function on the pair `(y1, y2)`, with a
    /// common maximizer as witness when it holds.
    pub fn is_additive(&self, y1: Vec2<T>, y2: Vec2<T>, tol: Tol<T>) -> Additivity<T> {
        let defect = self.support(y1) + self.support(y2) - self.support(y1 + y2);
        let scale = y1.norm() + y2.norm();
        let additive = defect <= tol.get() * scale.max(T::one());
        let witness = if !additive {
            None
        } else {
            match (self.maximizer_set(y1, tol), self.maximizer_set(y2, tol)) {
                (Ok(f1), Ok(f2)) => f1.common_point(&f2, tol.get() * self.scale()),
                (Ok(f), Err(_)) | (Err(_), Ok(f)) => Some(f.center()),
                (Err(_), Err(_)) => None,
            }
        };
        Additivity { additive, defect, witness }
    }

    /// Outward unit normals of the boundary.
    pub fn normals_set(&self) -> NormalSet<T> {
        match self {
            ConvexBody::Polygon(p) => NormalSet::Finite(p.edge_normals()),
            ConvexBody::Ellipse(_) => NormalSet::FullSphere,
        }
    }

    /// Whether `y / φ_K(y)` is an extreme point of the closed polar body.
    pub fn is_extreme_of_polar(&self, y: Vec2<T>, tol: Tol<T>) -> Result<bool> {
        if y.norm() == T::zero() {
            return Err(Error::ZeroDirection);
        }
        match self {
            ConvexBody::Polygon(p) => {
                let point = y / self.support(y);
                Ok(polar_vertices(p).iter().any(|w| point.dist(*w) <= tol.get() * w.norm().max(T::one())))
            }
            // every boundary point of an ellipse is exposed
            ConvexBody::Ellipse(_) => Ok(true),
        }
    }

    /// Outward unit normal at a boundary point, `None` at polygon corners.
    pub fn outward_normal(&self, x: Vec2<T>, tol: Tol<T>) -> Option<Vec2<T>> {
        match self {
            ConvexBody::Polygon(p) => {
                let scale = self.scale();
                let hits: Vec<usize> = (0..p.len())
                    .filter(|&i| point_segment_distance(x, p.vertex(i), p.vertex(i + 1)) <= tol.get() * scale)
                    .collect();
                match hits.as_slice() {
                    [i] => Some(p.edge_normal(*i)),
                    _ => None,
                }
            }
            ConvexBody::Ellipse(e) => Vec2::new(x.x / (e.a * e.a), x.y / (e.b * e.b)).normalized(),
        }
    }

    pub fn area(&self) -> T {
        match self {
            ConvexBody::Polygon(p) => p.area(),
            ConvexBody::Ellipse(e) => T::PI() * e.a * e.b,
        }
    }

    pub fn diameter(&self) -> T {
        match self {
            ConvexBody::Polygon(p) => {
                let v = p.vertices();
                let mut d = T::zero();
                for i in 0..v.len() {
                    for j in i + 1..v.len() {
                        d = d.max(v[i].dist(v[j]));
                    }
                }
                d
            }
            ConvexBody::Ellipse(e) => T::two() * e.a.max(e.b),
        }
    }

    /// Constants `(c, C)` with `c|x| ≤ φ_K(x) ≤ C|x|`.
    pub fn coercivity(&self) -> (T, T) {
        match self {
            ConvexBody::Polygon(p) => {
                let c = (0..p.len()).map(|i| p.edge_normal(i).dot(p.vertex(i))).fold(T::infinity(), T::min);
                let cap = p.vertices().iter().map(|v| v.norm()).fold(T::zero(), T::max);
                (c, cap)
            }
            ConvexBody::Ellipse(e) => (e.a.min(e.b), e.a.max(e.b)),
        }
    }

    /// Coordinate magnitude used to scale tolerances.
    pub fn scale(&self) -> T {
        self.coercivity().1.max(T::one())
    }

    pub fn scaled(&self, s: T) -> Self {
        match self {
            ConvexBody::Polygon(p) => ConvexBody::Polygon(p.scale(s)),
            ConvexBody::Ellipse(e) => ConvexBody::Ellipse(Ellipse { a: e.a * s, b: e.b * s }),
        }
    }

    /// `max |φ_K(u) - φ_L(u)|` over `n` equally spaced unit directions.
    pub fn support_gap_sampled(&self, other: &Self, n: usize) -> T {
        (0..n)
            .map(|k| {
                let u = Vec2::from_angle(T::TAU() * T::lit(k as f64) / T::lit(n as f64));
                (self.support(u) - other.support(u)).abs()
            })
            .fold(T::zero(), T::max)
    }
}

/// Vertices of the polar of a polygon containing the origin: the intersection
/// of consecutive constraint lines `y·v_i = 1`, `y·v_{i+1} = 1`.
fn polar_vertices<T: Scalar>(p: &ConvexPolygon<T>) -> Vec<Vec2<T>> {
    (0..p.len())
        .map(|i| {
            let (a, b) = (p.vertex(i), p.vertex(i + 1));
            let det = a.cross(b);
            Vec2::new((b.y - a.y) / det, (a.x - b.x) / det)
        })
        .collect()
}

/// Face of a polygon on which `x ↦ x·y` is maximal.
fn argmax_face<T: Scalar>(p: &ConvexPolygon<T>, y: Vec2<T>, tol: Tol<T>) -> Face<T> {
    let n = p.len();
    let vals: Vec<T> = p.vertices().iter().map(|v| v.dot(y)).collect();
    let (best, &m) =
        vals.iter().enumerate().max_by(|a, b| a.1.partial_cmp(b.1).expect("finite")).expect("nonempty polygon");
    let eps = tol.get() * y.norm() * p.max_abs_coord().max(T::one());
    let next = (best + 1) % n;
    let prev = (best + n - 1) % n;
    if m - vals[next] <= eps {
        Face::Edge { index: best, start: p.vertex(best), end: p.vertex(next) }
    } else if m - vals[prev] <= eps {
        Face::Edge { index: prev, start: p.vertex(prev), end: p.vertex(best) }
    } else {
        Face::Vertex { index: best, point: p.vertex(best) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

    fn v(x: f64, y: f64) -> Vec2<f64> {
        Vec2::new(x, y)
    }

    fn tol() -> Tol<f64> {
        Tol::default()
    }

    #[test]
    fn support_examples() {
        let sq = ConvexBody::square(1.0);
        assert_eq!(sq.support(v(1.0, 1.0)), 2.0);
        assert_eq!(sq.support(v(0.0, 0.0)), 0.0);
        let d = ConvexBody::diamond(1.0);
        let x = v(-FRAC_PI_6.sin(), FRAC_PI_6.cos());
        assert_relative_eq!(d.support(x), FRAC_PI_6.cos(), epsilon = 1e-15);
        assert_eq!(ConvexBody::ellipse(2.0, 1.0).unwrap().support(v(1.0, 0.0)), 2.0);
    }

    #[test]
    fn gauge_examples() {
        assert_relative_eq!(ConvexBody::square(1.0).gauge(v(1.0, 1.0)), 1.0, epsilon = 1e-15);
        assert_relative_eq!(ConvexBody::ellipse(2.0, 1.0).unwrap().gauge(v(2.0, 0.0)), 1.0);
        let d = ConvexBody::diamond(1.0);
        for p in [v(0.5, 0.5), v(1.0, 0.0), v(-0.25, -0.75)] {
            assert_relative_eq!(d.gauge(p), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn polar_examples() {
        let sq = ConvexBody::square(1.0);
        let d = ConvexBody::diamond(1.0);
        assert!(sq.polar().as_polygon().unwrap().approx_eq(d.as_polygon().unwrap(), 1e-12));
        assert!(d.polar().as_polygon().unwrap().approx_eq(sq.as_polygon().unwrap(), 1e-12));
        assert_eq!(ConvexBody::ellipse(2.0, 1.0).unwrap().polar(), ConvexBody::ellipse(0.5, 1.0).unwrap());
    }

    #[test]
    fn origin_must_be_interior() {
        let e = ConvexBody::polygon(&[v(0.0, 0.0), v(1.0, 0.0), v(0.0, 1.0)]).unwrap_err();
        assert!(matches!(e, Error::OriginNotInterior));
        assert!(ConvexBody::<f64>::ellipse(0.0, 1.0).is_err());
    }

    #[test]
    fn subdifferential_examples() {
        let d = ConvexBody::diamond(1.0);
        match d.subdifferential_face(v(0.0, 1.0), tol()).unwrap() {
            Face::Edge { start, end, .. } => {
                let mut ends = [start, end];
                ends.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
                assert!(ends[0].approx_eq(v(-1.0, 1.0), 1e-12));
                assert!(ends[1].approx_eq(v(1.0, 1.0), 1e-12));
            }
            f => panic!("expected an edge, got {f:?}"),
        }
        let f = ConvexBody::square(1.0).subdifferential_face(v(1.0, 0.0), tol()).unwrap();
        assert!(f.is_singleton() && f.center().approx_eq(v(1.0, 0.0), 1e-12));
        let f = ConvexBody::ellipse(1.0, 1.0).unwrap().subdifferential_face(v(0.0, 1.0), tol()).unwrap();
        assert_eq!(f, Face::Point(v(0.0, 1.0)));
        assert!(matches!(d.subdifferential_face(v(0.0, 0.5), tol()), Err(Error::NotOnBoundary { .. })));
    }

    #[test]
    fn cone_examples() {
        let d = ConvexBody::diamond(1.0);
        let z = v(0.0, 1.0);
        assert!(d.cone_contains(z, v(0.5, 1.0), tol()).unwrap());
        assert!(!d.cone_contains(z, v(2.0, 1.0), tol()).unwrap());
        assert!(d.cone_contains(z, v(0.0, 0.0), tol()).unwrap());
        assert!(ConvexBody::square(1.0).cone_contains(v(1.0, 1.0), v(0.0, 0.0), tol()).unwrap());
    }

    #[test]
    fn maximizer_examples() {
        let sq = ConvexBody::square(1.0);
        match sq.maximizer_set(v(1.0, 0.0), tol()).unwrap() {
            Face::Edge { start, end, .. } => {
                assert_eq!(start.x, 1.0);
                assert_eq!(end.x, 1.0);
                assert_eq!((start.y + end.y), 0.0);
            }
            f => panic!("expected edge, got {f:?}"),
        }
        let f = sq.maximizer_set(v(1.0, 1.0), tol()).unwrap();
        assert!(matches!(f, Face::Vertex { point, .. } if point == v(1.0, 1.0)));
        let f = ConvexBody::ellipse(1.0, 1.0).unwrap().maximizer_set(v(0.0, 3.0), tol()).unwrap();
        assert_eq!(f, Face::Point(v(0.0, 1.0)));
        assert!(matches!(sq.maximizer_set(v(0.0, 0.0), tol()), Err(Error::ZeroDirection)));
    }

    #[test]
    fn additivity_examples() {
        let d = ConvexBody::diamond(1.0);
        let t = FRAC_PI_6.tan();
        let a = d.is_additive(v(t, 1.0), v(-t, 1.0), tol());
        assert!(a.additive);
        assert!(a.witness.unwrap().approx_eq(v(0.0, 1.0), 1e-12));
        let t = FRAC_PI_3.tan();
        assert!(!d.is_additive(v(t, 1.0), v(-t, 1.0), tol()).additive);
        let y = v(0.3, -0.7);
        assert!(d.is_additive(y, y * 2.5, tol()).additive);
        assert!(ConvexBody::ellipse(2.0, 1.0).unwrap().is_additive(y, y * 0.1, tol()).additive);
    }

    #[test]
    fn normals_examples() {
        let sq = ConvexBody::square(1.0).normals_set();
        let mut got = sq.finite().unwrap().to_vec();
        got.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
        assert_eq!(got, vec![v(-1.0, 0.0), v(0.0, -1.0), v(0.0, 1.0), v(1.0, 0.0)]);
        assert_eq!(ConvexBody::ellipse(3.0, 1.0).unwrap().normals_set(), NormalSet::FullSphere);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let dn = ConvexBody::diamond(1.0).normals_set();
        for n in [v(h, h), v(-h, h), v(-h, -h), v(h, -h)] {
            assert!(dn.is_in_closure(n, 1e-12));
        }
        assert!(!dn.is_in_closure(v(0.0, 1.0), 1e-9));
    }

    #[test]
    fn extreme_of_polar_examples() {
        let y = v(0.0, 1.0);
        assert!(!ConvexBody::diamond(1.0).is_extreme_of_polar(y, tol()).unwrap());
        assert!(ConvexBody::square(1.0).is_extreme_of_polar(y, tol()).unwrap());
        assert!(ConvexBody::ellipse(2.0, 0.5).unwrap().is_extreme_of_polar(v(0.3, 0.1), tol()).unwrap());
        assert!(ConvexBody::square(1.0).is_extreme_of_polar(v(0.0, 0.0), tol()).is_err());
    }

    #[test]
    fn coercivity_constants() {
        let (c, cap) = ConvexBody::square(1.0).coercivity();
        assert_relative_eq!(c, 1.0);
        assert_relative_eq!(cap, 2f64.sqrt());
    }

    #[test]
    fn f32_bodies_work() {
        let d = ConvexBody::<f32>::diamond(1.0);
        assert!((d.support(Vec2::new(1.0, 1.0)) - 1.0).abs() < 1e-6);
        assert!((d.gauge(Vec2::new(1.0, 1.0)) - 2.0).abs() < 1e-6);
        let p = d.polar();
        assert!((p.area() - 4.0).abs() < 1e-5);
    }
}
