//! Steiner symmetrization with respect to the horizontal axis.
//!
//! Each vertical section of a body is replaced by the centered segment of the
//! same length. For a convex polygon the section length is piecewise linear
//! between vertex abscissae, so the symmetral is the hull of the points
//! `(x, ±v(x)/2)` at those abscissae.

use crate::body::{ConvexBody, ConvexPolygon, Ellipse};
use crate::error::Result;
use crate::perimeter::VDistributedSet;
use crate::sbv1d::{section_profiles, SbvProfile};
use crate::scalar::{Scalar, Tol};
use crate::vec2::Vec2;

/// Vertical section length of a body as a function of the abscissa.
#[derive(Debug, Clone, PartialEq)]
pub enum SectionWidth<T> {
    Profile(SbvProfile<T>),
    Ellipse(Ellipse<T>),
}

impl<T: Scalar> SectionWidth<T> {
    pub fn eval(&self, x: T) -> T {
        match self {
            SectionWidth::Profile(v) => v.eval(x),
            SectionWidth::Ellipse(e) => {
                let r = T::one() - (x / e.a) * (x / e.a);
                if r > T::zero() {
                    T::two() * e.b * r.sqrt()
                } else {
                    T::zero()
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetralResult<T> {
    pub body: ConvexBody<T>,
    pub section_width: SectionWidth<T>,
}

/// Symmetral of a convex polygon; the origin may lie anywhere.
pub fn symmetrize_polygon<T: Scalar>(p: &ConvexPolygon<T>) -> Result<(ConvexPolygon<T>, SbvProfile<T>)> {
    let (v, _) = section_profiles(&[p.vertices().to_vec()])?;
    let h = T::half();
    let mut pts = Vec::with_capacity(4 * v.nodes().len());
    for (i, &x) in v.nodes().iter().enumerate() {
        let m = v.left_limits()[i].max(v.right_limits()[i]) * h;
        pts.push(Vec2::new(x, m));
        pts.push(Vec2::new(x, -m));
    }
    Ok((ConvexPolygon::hull(&pts, Tol::default())?, v))
}

/// The Steiner symmetral `K^s` of a planar body.
pub fn steiner_symmetrize<T: Scalar>(k: &ConvexBody<T>) -> Result<SymmetralResult<T>> {
    match k {
        ConvexBody::Polygon(p) => {
            let (sym, v) = symmetrize_polygon(p)?;
            Ok(SymmetralResult {
                body: ConvexBody::from_polygon(sym, Tol::default())?,
                section_width: SectionWidth::Profile(v),
            })
        }
        ConvexBody::Ellipse(e) => Ok(SymmetralResult { body: k.clone(), section_width: SectionWidth::Ellipse(*e) }),
    }
}

/// `F[v]`, the symmetric set with section lengths `v`.
#[allow(non_snake_case)]
pub fn build_F_of_v<T: Scalar>(v: &SbvProfile<T>) -> Result<VDistributedSet<T>> {
    VDistributedSet::symmetric(v.clone())
}

/// Whether `φ_K(p, q) = φ_K(p, -q)` on 360 equally spaced directions.
pub fn support_symmetry_check<T: Scalar>(k: &ConvexBody<T>, tol: Tol<T>) -> bool {
    let scale = k.scale();
    (0..360).all(|i| {
        let u = Vec2::from_angle(T::TAU() * T::lit(i as f64) / T::lit(360.0));
        tol.eq_scaled(k.support(u), k.support(u.flip_q()), scale)
    })
}
