use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tol};
use crate::vec2::Vec2;

/// A convex polygon in canonical form: counterclockwise, lexicographically
/// smallest vertex first, no repeated or collinear vertices.
///
/// No assumption is made about the position of the origin; see
/// [`ConvexBody`](super::ConvexBody) for the origin-interior variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Vec2<T>>,
}

fn lex_cmp<T: Scalar>(a: &Vec2<T>, b: &Vec2<T>) -> std::cmp::Ordering {
    a.x.partial_cmp(&b.x).expect("finite").then(a.y.partial_cmp(&b.y).expect("finite"))
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Convex hull of an arbitrary point cloud (monotone chain). Points that are
    /// interior, duplicated or collinear with hull edges are discarded.
    pub fn hull(points: &[Vec2<T>], tol: Tol<T>) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidPolygon("non-finite coordinate".into()));
        }
        let scale = points.iter().fold(T::one(), |m, p| m.max(p.x.abs()).max(p.y.abs()));
        let eps = tol.get() * scale;

        let mut pts = points.to_vec();
        pts.sort_by(lex_cmp);
        pts.dedup_by(|a, b| a.approx_eq(*b, eps));
        if pts.len() < 3 {
            return Err(Error::InvalidPolygon("fewer than three distinct points".into()));
        }

        // a turn counts as strictly left only when its sine exceeds tol
        let left_turn = |o: Vec2<T>, a: Vec2<T>, b: Vec2<T>| {
            let (u, w) = (a - o, b - o);
            u.cross(w) > tol.get() * u.norm() * w.norm()
        };

        let mut lower: Vec<Vec2<T>> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && !left_turn(lower[lower.len() - 2], lower[lower.len() - 1], p) {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Vec2<T>> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && !left_turn(upper[upper.len() - 2], upper[upper.len() - 1], p) {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);

        if lower.len() < 3 {
            return Err(Error::InvalidPolygon("points are collinear".into()));
        }
        let poly = ConvexPolygon { vertices: lower };
        if poly.area() <= eps * scale {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        Ok(poly)
    }

    /// Like [`hull`](Self::hull), but every input point must be a vertex of the
    /// hull or lie on one of its edges (collinear points are eliminated).
    pub fn from_vertices(points: &[Vec2<T>], tol: Tol<T>) -> Result<Self> {
        let poly = Self::hull(points, tol)?;
        let scale = poly.max_abs_coord().max(T::one());
        for (index, &p) in points.iter().enumerate() {
            if poly.boundary_distance(p) > tol.get() * scale {
                return Err(Error::NonExtremeVertex { index });
            }
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Vec2<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Vec2<T> {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2<T>, Vec2<T>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Outward unit normal of edge `i`.
    pub fn edge_normal(&self, i: usize) -> Vec2<T> {
        let (p, q) = (self.vertex(i), self.vertex(i + 1));
        (q - p).perp_cw().normalized().expect("non-degenerate edge")
    }

    pub fn edge_normals(&self) -> Vec<Vec2<T>> {
        (0..self.len()).map(|i| self.edge_normal(i)).collect()
    }

    pub fn area(&self) -> T {
        self.edges().map(|(p, q)| p.cross(q)).sum::<T>() * T::half()
    }

    pub fn centroid(&self) -> Vec2<T> {
        let a6 = self.area() * T::lit(6.0);
        let (mut cx, mut cy) = (T::zero(), T::zero());
        for (p, q) in self.edges() {
            let c = p.cross(q);
            cx = cx + (p.x + q.x) * c;
            cy = cy + (p.y + q.y) * c;
        }
        Vec2::new(cx / a6, cy / a6)
    }

    pub fn max_abs_coord(&self) -> T {
        self.vertices.iter().fold(T::zero(), |m, p| m.max(p.x.abs()).max(p.y.abs()))
    }

    /// Signed distance of `p` to the boundary, negative inside.
    pub fn signed_distance(&self, p: Vec2<T>) -> T {
        let mut inside = true;
        let mut best = T::infinity();
        for (a, b) in self.edges() {
            let n = (b - a).perp_cw();
            if n.dot(p - a) > T::zero() {
                inside = false;
            }
            best = best.min(point_segment_distance(p, a, b));
        }
        if inside {
            -best
        } else {
            best
        }
    }

    pub fn boundary_distance(&self, p: Vec2<T>) -> T {
        self.signed_distance(p).abs()
    }

    /// Euclidean distance from `p` to the closed polygon (0 inside).
    pub fn distance(&self, p: Vec2<T>) -> T {
        self.signed_distance(p).max(T::zero())
    }

    pub fn translate(&self, d: Vec2<T>) -> Self {
        ConvexPolygon { vertices: self.vertices.iter().map(|&v| v + d).collect() }
    }

    pub fn scale(&self, s: T) -> Self {
        assert!(s > T::zero());
        ConvexPolygon { vertices: self.vertices.iter().map(|&v| v * s).collect() }
    }

    /// Same polygon up to vertex tolerance (canonical order makes this a
    /// pointwise comparison).
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.len() == other.len() && self.vertices.iter().zip(&other.vertices).all(|(a, b)| a.approx_eq(*b, tol))
    }

    /// Largest vertex mismatch between two polygons with equal vertex count.
    pub fn vertex_error(&self, other: &Self) -> Option<T> {
        (self.len() == other.len()).then(|| {
            self.vertices
                .iter()
                .zip(&other.vertices)
                .fold(T::zero(), |m, (a, b)| m.max((a.x - b.x).abs()).max((a.y - b.y).abs()))
        })
    }

    /// Smallest and largest abscissa.
    pub fn x_range(&self) -> (T, T) {
        self.vertices.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), v| (lo.min(v.x), hi.max(v.x)))
    }

    /// Whether the polygon is convex and counterclockwise with no reflex or
    /// flat corners beyond `tol`.
    pub fn is_strictly_convex(&self, tol: T) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            let (a, b, c) = (self.vertex(i), self.vertex(i + 1), self.vertex(i + 2));
            (b - a).cross(c - b) > tol
        })
    }
}

/// Euclidean distance from `p` to the closed segment `[a, b]`.
pub fn point_segment_distance<T: Scalar>(p: Vec2<T>, a: Vec2<T>, b: Vec2<T>) -> T {
    let d = b - a;
    let len2 = d.norm_sq();
    if len2 == T::zero() {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / len2).max(T::zero()).min(T::one());
    p.dist(a + d * t)
}
