use serde::{Deserialize, Serialize};

use crate::body::polygon::point_segment_distance;
use crate::scalar::Scalar;
use crate::vec2::Vec2;

/// A closed convex piece of the boundary of a planar body: a single point or
/// a straight edge. Polygon faces remember the vertex index they start at,
/// which makes intersection tests between faces of the same polygon exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Face<T> {
    /// Boundary point of a smooth body.
    Point(Vec2<T>),
    /// Vertex `index` of a polygon.
    Vertex { index: usize, point: Vec2<T> },
    /// Edge from vertex `index` to vertex `index + 1` of a polygon.
    Edge { index: usize, start: Vec2<T>, end: Vec2<T> },
}

impl<T: Scalar> Face<T> {
    pub fn points(&self) -> Vec<Vec2<T>> {
        match *self {
            Face::Point(p) | Face::Vertex { point: p, .. } => vec![p],
            Face::Edge { start, end, .. } => vec![start, end],
        }
    }

    pub fn is_singleton(&self) -> bool {
        !matches!(self, Face::Edge { .. })
    }

    /// A representative point (the midpoint for edges).
    pub fn center(&self) -> Vec2<T> {
        match *self {
            Face::Point(p) | Face::Vertex { point: p, .. } => p,
            Face::Edge { start, end, .. } => start.lerp(end, T::half()),
        }
    }

    pub fn contains(&self, p: Vec2<T>, tol: T) -> bool {
        match *self {
            Face::Point(q) | Face::Vertex { point: q, .. } => p.dist(q) <= tol,
            Face::Edge { start, end, .. } => point_segment_distance(p, start, end) <= tol,
        }
    }

    /// `n + 1` evenly spaced points of the face (one point for singletons).
    pub fn sample(&self, n: usize) -> Vec<Vec2<T>> {
        match *self {
            Face::Edge { start, end, .. } => {
                (0..=n).map(|k| start.lerp(end, T::lit(k as f64) / T::lit(n.max(1) as f64))).collect()
            }
            _ => vec![self.center()],
        }
    }

    /// A point common to both faces, if any.
    pub fn common_point(&self, other: &Self, tol: T) -> Option<Vec2<T>> {
        use Face::*;
        match (*self, *other) {
            (Edge { index: i, start, .. }, Edge { index: j, .. }) if i == j => Some(start),
            (Vertex { index: i, point, .. }, Vertex { index: j, .. }) if i == j => Some(point),
            (Edge { start, end, .. }, Edge { start: s2, end: e2, .. }) => [start, end]
                .into_iter()
                .find(|&p| other.contains(p, tol))
                .or_else(|| [s2, e2].into_iter().find(|&p| self.contains(p, tol))),
            (a, b) => {
                if let Some(p) = a.points().into_iter().find(|&p| b.contains(p, tol)) {
                    Some(p)
                } else {
                    b.points().into_iter().find(|&p| a.contains(p, tol))
                }
            }
        }
    }
}

/// Outward unit normals realized on the reduced boundary of a planar body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum NormalSet<T> {
    /// Edge normals of a polygon (already closed).
    Finite(Vec<Vec2<T>>),
    /// Every unit vector, as for bodies with `C^1` strictly convex boundary.
    FullSphere,
}

impl<T: Scalar> NormalSet<T> {
    /// Membership of `nu / |nu|` in the closure of the set, up to a chord
    /// tolerance on the unit circle.
    pub fn is_in_closure(&self, nu: Vec2<T>, tol: T) -> bool {
        let Some(unit) = nu.normalized() else {
            return false;
        };
        match self {
            NormalSet::FullSphere => true,
            NormalSet::Finite(normals) => normals.iter().any(|n| n.dist(unit) <= tol),
        }
    }

    pub fn finite(&self) -> Option<&[Vec2<T>]> {
        match self {
            NormalSet::Finite(v) => Some(v),
            NormalSet::FullSphere => None,
        }
    }
}
