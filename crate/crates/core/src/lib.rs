//! Anisotropic perimeter calculus for planar sets.
//!
//! The crate covers support/gauge duality of convex bodies, Steiner
//! symmetrization, piecewise-linear SBV profiles, anisotropic total variation
//! of discrete vector measures, exact anisotropic perimeters of sets
//! described by a section-length profile `v` and a barycenter profile `b`,
//! and the equality and rigidity checks built on top of them.
//!
//! Everything is generic over the scalar type ([`Scalar`], implemented for
//! `f32` and `f64`); the aliases at the crate root fix `f64`.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord, clippy::type_complexity)]

pub mod body;
pub mod corpus;
pub mod error;
pub mod interval;
pub mod io;
pub mod measure;
pub mod perimeter;
pub mod rigidity;
pub mod sbv1d;
pub mod scalar;
pub mod steiner;
pub mod vec2;

pub use body::{Additivity, ConvexBody, ConvexPolygon, Ellipse, Face, NormalSet, Polytope};
pub use error::{Error, Result};
pub use interval::IntervalSet;
pub use scalar::{Scalar, Tol};
pub use vec2::Vec2;

pub type Point = Vec2<f64>;
pub type Body = ConvexBody<f64>;
pub type Polygon = ConvexPolygon<f64>;
pub type Intervals = IntervalSet<f64>;
pub type Profile = sbv1d::SbvProfile<f64>;
pub type VSet = perimeter::VDistributedSet<f64>;
pub type Polygons = perimeter::PolygonSet<f64>;
