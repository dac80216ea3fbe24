//! Anisotropic perimeter of planar sets.
//!
//! Two independent routes are provided. [`polygon_perimeter`] sums
//! `φ_K(outward normal)·length` over the edges of an explicit boundary and is
//! exact for polygons. [`perimeter_from_vb`] evaluates the closed formula for
//! a set `W[v, b] = {|q - b(p)| < v(p)/2}` in terms of the slopes and jumps
//! of the section-length profile `v` and the barycenter profile `b`.
//!
//! The jump term on `J_b \ J_v` is evaluated with the same body `K` on both
//! sides of the wall, whether or not `K` is symmetric.

use serde::{Deserialize, Serialize};

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::sbv1d::{section_profiles, JumpDir, SbvProfile};
use crate::scalar::{Scalar, Tol};
use crate::steiner::support_symmetry_check;
use crate::vec2::Vec2;

/// Closed polygon loops. Counterclockwise loops bound the set from outside,
/// clockwise loops are holes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonSet<T> {
    loops: Vec<Vec<Vec2<T>>>,
}

fn signed_area<T: Scalar>(lp: &[Vec2<T>]) -> T {
    let n = lp.len();
    (0..n).map(|i| lp[i].cross(lp[(i + 1) % n])).sum::<T>() * T::half()
}

fn segments_cross<T: Scalar>(a: Vec2<T>, b: Vec2<T>, c: Vec2<T>, d: Vec2<T>) -> bool {
    let o = |p: Vec2<T>, q: Vec2<T>, r: Vec2<T>| (q - p).cross(r - p);
    let (d1, d2, d3, d4) = (o(c, d, a), o(c, d, b), o(a, b, c), o(a, b, d));
    d1 * d2 < T::zero() && d3 * d4 < T::zero()
}

impl<T: Scalar> PolygonSet<T> {
    /// Loops must have at least three points, no proper self-crossings and
    /// positive total signed area.
    pub fn new(loops: Vec<Vec<Vec2<T>>>) -> Result<Self> {
        for (k, lp) in loops.iter().enumerate() {
            if lp.len() < 3 {
                return Err(Error::InvalidPolygon(format!("loop {k} has fewer than three points")));
            }
            if lp.iter().any(|p| !p.is_finite()) {
                return Err(Error::InvalidPolygon(format!("loop {k} has a non-finite point")));
            }
            let n = lp.len();
            for i in 0..n {
                for j in i + 2..n {
                    if i == 0 && j == n - 1 {
                        continue;
                    }
                    if segments_cross(lp[i], lp[(i + 1) % n], lp[j], lp[(j + 1) % n]) {
                        return Err(Error::InvalidPolygon(format!("loop {k} crosses itself")));
                    }
                }
            }
        }
        let set = PolygonSet { loops };
        if set.area() <= T::zero() && !set.loops.is_empty() {
            return Err(Error::InvalidPolygon("total signed area must be positive".into()));
        }
        Ok(set)
    }

    /// Every loop is taken as an outer boundary and oriented counterclockwise.
    pub fn from_outer_loops(mut loops: Vec<Vec<Vec2<T>>>) -> Result<Self> {
        for lp in &mut loops {
            if signed_area(lp) < T::zero() {
                lp.reverse();
            }
        }
        Self::new(loops)
    }

    pub fn empty() -> Self {
        PolygonSet { loops: Vec::new() }
    }

    pub fn loops(&self) -> &[Vec<Vec2<T>>] {
        &self.loops
    }

    pub fn area(&self) -> T {
        self.loops.iter().map(|lp| signed_area(lp)).sum()
    }

    /// Boundary edges `(start, end)` with the set on their left.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2<T>, Vec2<T>)> + '_ {
        self.loops.iter().flat_map(|lp| {
            let n = lp.len();
            (0..n).map(move |i| (lp[i], lp[(i + 1) % n]))
        })
    }
}

/// `P_K(E; B × ℝ)` for a polygonal set `E`: the sum over edges of
/// `φ_K(outward normal)` times the length of the edge inside `B × ℝ`.
pub fn polygon_perimeter<T: Scalar>(e: &PolygonSet<T>, k: &ConvexBody<T>, strip: &IntervalSet<T>) -> T {
    e.edges()
        .map(|(p, q)| {
            let d = q - p;
            // outward normal scaled by the edge length
            let weight = k.support(d.perp_cw());
            let (lo, hi) = (p.x.min(q.x), p.x.max(q.x));
            if hi > lo {
                weight * strip.overlap_len(lo, hi) / (hi - lo)
            } else if strip.contains(p.x) {
                weight
            } else {
                T::zero()
            }
        })
        .sum()
}

/// Anisotropic perimeter of a convex body `E` with surface tension `φ_K`.
/// Polygons are exact; ellipses use the periodic trapezoidal rule on
/// `t ↦ φ_K(b cos t, a sin t)`.
pub fn body_perimeter<T: Scalar>(e: &ConvexBody<T>, k: &ConvexBody<T>) -> T {
    match e {
        ConvexBody::Polygon(p) => {
            let set = PolygonSet { loops: vec![p.vertices().to_vec()] };
            polygon_perimeter(&set, k, &IntervalSet::everything())
        }
        ConvexBody::Ellipse(el) => {
            const N: usize = 4096;
            let h = T::TAU() / T::lit(N as f64);
            (0..N)
                .map(|i| {
                    let t = h * T::lit(i as f64);
                    k.support(Vec2::new(el.b * t.cos(), el.a * t.sin()))
                })
                .sum::<T>()
                * h
        }
    }
}

/// Perimeter of the subgraph `{t < u(x)}` or the epigraph `{t > u(x)}` over a strip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphPerimeter<T> {
    pub ac_part: T,
    pub jump_part: T,
    /// Always zero for piecewise-linear profiles.
    pub cantor_part: T,
    pub total: T,
}

fn graph_perimeter<T: Scalar>(u: &SbvProfile<T>, k: &ConvexBody<T>, b: &IntervalSet<T>, sign: T) -> GraphPerimeter<T> {
    let one = T::one();
    let flat = k.support(Vec2::new(T::zero(), sign * one));
    let mut ac = T::zero();
    match u.extent() {
        Some((x0, xm)) => {
            ac = ac + flat * (b.overlap_len(T::neg_infinity(), x0) + b.overlap_len(xm, T::infinity()));
            for p in u.pieces() {
                ac = ac + k.support(Vec2::new(-p.slope(), one) * sign) * b.overlap_len(p.start, p.end);
            }
        }
        None => ac = flat * b.overlap_len(T::neg_infinity(), T::infinity()),
    }
    let jump = u
        .jumps()
        .iter()
        .filter(|j| b.contains(j.location))
        .map(|j| j.height() * k.support(Vec2::new(-sign * j.direction.sign::<T>(), T::zero())))
        .sum::<T>();
    GraphPerimeter { ac_part: ac, jump_part: jump, cantor_part: T::zero(), total: ac + jump }
}

/// `P_K({t < u}; B × ℝ) = ∫_B φ_K(-∇u, 1) + Σ_{J_u ∩ B} [u] φ_K(-ν_u, 0)`.
pub fn subgraph_perimeter<T: Scalar>(u: &SbvProfile<T>, k: &ConvexBody<T>, b: &IntervalSet<T>) -> GraphPerimeter<T> {
    graph_perimeter(u, k, b, T::one())
}

/// `P_K({t > u}; B × ℝ) = ∫_B φ_K(∇u, -1) + Σ_{J_u ∩ B} [u] φ_K(ν_u, 0)`.
pub fn epigraph_perimeter<T: Scalar>(u: &SbvProfile<T>, k: &ConvexBody<T>, b: &IntervalSet<T>) -> GraphPerimeter<T> {
    graph_perimeter(u, k, b, -T::one())
}

/// The set `W[v, b] = {(p, q) : |q - b(p)| < v(p)/2}` with `v ≥ 0` and `b`
/// vanishing wherever `v` vanishes identically.
#[derive(Debug, Clone, PartialEq)]
pub struct VDistributedSet<T> {
    v: SbvProfile<T>,
    b: SbvProfile<T>,
}

impl<T: Scalar> VDistributedSet<T> {
    pub fn new(v: SbvProfile<T>, b: SbvProfile<T>) -> Result<Self> {
        v.check_nonnegative()?;
        let restricted = b.restricted_to_support_of(&v)?;
        let err = restricted.max_difference(&b);
        if err > T::NODE_EPS * b.max_abs().max(T::one()) {
            return Err(Error::ProfileMismatch(format!("b is nonzero where v vanishes (by {err})")));
        }
        Ok(VDistributedSet { v, b: restricted })
    }

    /// Zeroes `b` where `v` vanishes instead of rejecting it.
    pub fn restricted(v: SbvProfile<T>, b: SbvProfile<T>) -> Result<Self> {
        v.check_nonnegative()?;
        let b = b.restricted_to_support_of(&v)?;
        Ok(VDistributedSet { v, b })
    }

    /// `F[v]`, the set with sections of length `v` centered on `q = 0`.
    pub fn symmetric(v: SbvProfile<T>) -> Result<Self> {
        Self::new(v, SbvProfile::zero())
    }

    /// Section-length and barycenter profiles of a polygon with segment sections.
    pub fn from_polygon(e: &PolygonSet<T>) -> Result<Self> {
        let (v, b) = section_profiles(e.loops())?;
        Self::restricted(v, b)
    }

    pub fn v(&self) -> &SbvProfile<T> {
        &self.v
    }

    pub fn b(&self) -> &SbvProfile<T> {
        &self.b
    }

    pub fn nodes(&self) -> Vec<T> {
        SbvProfile::common_nodes(&[&self.v, &self.b])
    }

    /// `(v, b)` limits `((v_L, v_R), (b_L, b_R))` at `x`.
    pub fn limits_at(&self, x: T) -> ((T, T), (T, T)) {
        (self.v.limits_at(x), self.b.limits_at(x))
    }

    /// Open sections `(b - v/2, b + v/2)` just left and right of `x`.
    pub fn sections_at(&self, x: T) -> ((T, T), (T, T)) {
        let ((vl, vr), (bl, br)) = self.limits_at(x);
        let h = T::half();
        ((bl - vl * h, bl + vl * h), (br - vr * h, br + vr * h))
    }

    /// Explicit boundary of `W[v, b]`.
    ///
    /// Lower chain `b - v/2` left to right, upper chain `b + v/2` right to
    /// left, vertical walls at nodes. A component ends where `v` vanishes on
    /// a piece or where the sections on both sides of a node do not overlap.
    pub fn to_polygon_set(&self) -> PolygonSet<T> {
        let xs = self.nodes();
        if xs.len() < 2 {
            return PolygonSet::empty();
        }
        let eps = T::NODE_EPS;
        let active: Vec<bool> =
            xs.windows(2).map(|w| self.v.limits_at(w[0]).1 > eps || self.v.limits_at(w[1]).0 > eps).collect();
        let secs: Vec<_> = xs.iter().map(|&x| self.sections_at(x)).collect();
        let connected = |k: usize| {
            let (l, r) = secs[k];
            active[k - 1] && active[k] && l.1.min(r.1) - l.0.max(r.0) > eps
        };

        let mut loops = Vec::new();
        let mut j = 0;
        while j < active.len() {
            if !active[j] {
                j += 1;
                continue;
            }
            let mut last = j;
            while last + 1 < active.len() && connected(last + 1) {
                last += 1;
            }
            let mut pts: Vec<Vec2<T>> = Vec::new();
            let mut push = |p: Vec2<T>| {
                if pts.last().is_none_or(|q: &Vec2<T>| !q.approx_eq(p, eps)) {
                    pts.push(p);
                }
            };
            for k in j..=last + 1 {
                let (l, r) = secs[k];
                if k > j {
                    push(Vec2::new(xs[k], l.0));
                }
                if k <= last {
                    push(Vec2::new(xs[k], r.0));
                }
            }
            for k in (j..=last + 1).rev() {
                let (l, r) = secs[k];
                if k <= last {
                    push(Vec2::new(xs[k], r.1));
                }
                if k > j {
                    push(Vec2::new(xs[k], l.1));
                }
            }
            // a zero-length left wall leaves a duplicate at the seam
            if pts.len() > 1 && pts[0].approx_eq(pts[pts.len() - 1], eps) {
                pts.pop();
            }
            if pts.len() >= 3 {
                loops.push(pts);
            }
            j = last + 1;
        }
        PolygonSet { loops }
    }

    /// Lengths of the wall at `x` with outward normal `(+1, 0)` and `(-1, 0)`.
    pub fn wall_lengths(&self, x: T) -> (T, T) {
        let (l, r) = self.sections_at(x);
        let overlap = (l.1.min(r.1) - l.0.max(r.0)).max(T::zero());
        ((l.1 - l.0) - overlap, (r.1 - r.0) - overlap)
    }
}

/// Terms of the perimeter of `W[v, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerimeterBreakdown<T> {
    /// Graph parts of the boundary over `{v > 0}`.
    pub ac_part: T,
    /// Jumps of `v` with `v^∧ > 0`, wall part with normal `-ν_v`.
    pub jump_v_minus: T,
    /// Jumps of `v` with `v^∧ > 0`, wall part with normal `+ν_v`.
    pub jump_v_plus: T,
    /// Jumps of `b` where `v` is continuous.
    pub jump_b_only: T,
    /// Jumps of `v` with `v^∧ = 0`: full walls `v^∨ φ_K(-ν_v, 0)`.
    pub boundary_zero_part: T,
    /// Always zero for piecewise-linear profiles.
    pub cantor_part: T,
    pub total: T,
}

impl<T: Scalar> PerimeterBreakdown<T> {
    fn finish(mut self) -> Self {
        self.total = self.ac_part
            + self.jump_v_minus
            + self.jump_v_plus
            + self.jump_b_only
            + self.boundary_zero_part
            + self.cantor_part;
        self
    }
}

/// `P_K(W[v, b]; B × ℝ)` from the slopes and jumps of `v` and `b`.
pub fn perimeter_from_vb<T: Scalar>(
    s: &VDistributedSet<T>,
    k: &ConvexBody<T>,
    b_set: &IntervalSet<T>,
) -> PerimeterBreakdown<T> {
    let z = T::zero();
    let one = T::one();
    let h = T::half();
    let eps = T::NODE_EPS;
    let phi = |x: T, y: T| k.support(Vec2::new(x, y));
    let mut out = PerimeterBreakdown {
        ac_part: z,
        jump_v_minus: z,
        jump_v_plus: z,
        jump_b_only: z,
        boundary_zero_part: z,
        cantor_part: z,
        total: z,
    };
    let xs = s.nodes();

    for w in xs.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let (v0, v1) = (s.v.limits_at(x0).1, s.v.limits_at(x1).0);
        if v0 <= eps && v1 <= eps {
            continue;
        }
        let (b0, b1) = (s.b.limits_at(x0).1, s.b.limits_at(x1).0);
        let dv = (v1 - v0) / (x1 - x0);
        let db = (b1 - b0) / (x1 - x0);
        let density = phi(db - dv * h, -one) + phi(-db - dv * h, one);
        out.ac_part = out.ac_part + density * b_set.overlap_len(x0, x1);
    }

    for &x in &xs {
        if !b_set.contains(x) {
            continue;
        }
        let ((vl, vr), (bl, br)) = s.limits_at(x);
        match JumpDir::of_limits(vl, vr, eps) {
            Some(nu_v) => {
                let nv = nu_v.sign::<T>();
                let (v_hi, v_lo) = (vl.max(vr), vl.min(vr));
                if v_lo <= eps {
                    out.boundary_zero_part = out.boundary_zero_part + v_hi * phi(-nv, z);
                } else {
                    let jv_half = (v_hi - v_lo) * h;
                    let jb = (br - bl).abs();
                    let c1 = v_hi.min(jv_half + jb + (jv_half - jb).max(z));
                    let c2 = v_lo.min((jb - jv_half).max(z));
                    out.jump_v_minus = out.jump_v_minus + c1 * phi(-nv, z);
                    out.jump_v_plus = out.jump_v_plus + c2 * phi(nv, z);
                }
            }
            None => {
                if let Some(nu_b) = JumpDir::of_limits(bl, br, eps) {
                    let nb = nu_b.sign::<T>();
                    let v_avg = (vl + vr) * h;
                    let jb = (br - bl).abs();
                    out.jump_b_only = out.jump_b_only + jb.min(v_avg) * (phi(-nb, z) + phi(nb, z));
                }
            }
        }
    }
    out.finish()
}

/// Perimeter of `F[v]`.
pub fn perimeter_f_of_v<T: Scalar>(
    v: &SbvProfile<T>,
    k: &ConvexBody<T>,
    b_set: &IntervalSet<T>,
) -> Result<PerimeterBreakdown<T>> {
    let s = VDistributedSet::symmetric(v.clone())?;
    Ok(perimeter_from_vb(&s, k, b_set))
}

/// `P_{K^s}(W[v, b]) - P_{K^s}(F[v])` over the strip; nonnegative up to rounding.
pub fn steiner_gap<T: Scalar>(
    s: &VDistributedSet<T>,
    ks: &ConvexBody<T>,
    b_set: &IntervalSet<T>,
    tol: Tol<T>,
) -> Result<T> {
    if !support_symmetry_check(ks, tol) {
        return Err(Error::NotASymmetral);
    }
    let with_b = perimeter_from_vb(s, ks, b_set).total;
    let sym = perimeter_f_of_v(s.v(), ks, b_set)?.total;
    Ok(with_b - sym)
}
