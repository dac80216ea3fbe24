//! Compactly supported piecewise-linear functions of one variable with
//! jumps: the special-BV class carrying section lengths `v` and barycenters `b`.
//!
//! A profile is stored as strictly increasing nodes `x_0 < … < x_m` with a
//! left and a right limit at each node. The function is affine between
//! consecutive nodes and vanishes outside `[x_0, x_m]`, so `left[0] = 0` and
//! `right[m] = 0`. There is no Cantor part.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::scalar::Scalar;
use crate::vec2::Vec2;

/// Orientation `ν_f` of a jump: `Plus` when the upper value is on the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JumpDir {
    Plus,
    Minus,
}

impl JumpDir {
    pub fn sign<T: Scalar>(self) -> T {
        match self {
            JumpDir::Plus => T::one(),
            JumpDir::Minus => -T::one(),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            JumpDir::Plus => JumpDir::Minus,
            JumpDir::Minus => JumpDir::Plus,
        }
    }

    /// Direction of a jump with the given one-sided limits, `None` if continuous.
    pub fn of_limits<T: Scalar>(left: T, right: T, eps: T) -> Option<Self> {
        if (right - left).abs() <= eps {
            None
        } else if right > left {
            Some(JumpDir::Plus)
        } else {
            Some(JumpDir::Minus)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpRecord<T> {
    pub location: T,
    pub upper: T,
    pub lower: T,
    pub direction: JumpDir,
}

impl<T: Scalar> JumpRecord<T> {
    pub fn height(&self) -> T {
        self.upper - self.lower
    }
}

/// Lower limit, upper limit and approximate average at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds<T> {
    pub lower: T,
    pub upper: T,
    pub mean: T,
}

/// One affine piece on the open interval `(start, end)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece<T> {
    pub start: T,
    pub end: T,
    /// Right limit at `start`.
    pub start_value: T,
    /// Left limit at `end`.
    pub end_value: T,
}

impl<T: Scalar> Piece<T> {
    pub fn slope(&self) -> T {
        (self.end_value - self.start_value) / (self.end - self.start)
    }

    pub fn len(&self) -> T {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn at(&self, x: T) -> T {
        self.start_value + self.slope() * (x - self.start)
    }

    pub fn is_zero(&self, eps: T) -> bool {
        self.start_value.abs() <= eps && self.end_value.abs() <= eps
    }
}

/// Absolutely continuous density and jump part of `Df`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeParts<T> {
    /// `(start, end, slope)` per piece.
    pub slopes: Vec<(T, T, T)>,
    pub jumps: Vec<JumpRecord<T>>,
}

impl<T: Scalar> DerivativeParts<T> {
    /// `|Df|(G) = ∫_G |∇f| + Σ_{J_f ∩ G} [f]`.
    pub fn total_variation(&self, g: &IntervalSet<T>) -> T {
        let ac: T = self.slopes.iter().map(|&(a, b, s)| s.abs() * g.overlap_len(a, b)).sum();
        let jumps: T = self.jumps.iter().filter(|j| g.contains(j.location)).map(JumpRecord::height).sum();
        ac + jumps
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SbvProfile<T> {
    nodes: Vec<T>,
    left: Vec<T>,
    right: Vec<T>,
}

/// `τ_M(s) = max(-M, min(M, s))`.
pub fn clamp<T: Scalar>(s: T, m: T) -> T {
    s.max(-m).min(m)
}

impl<T: Scalar> SbvProfile<T> {
    pub fn zero() -> Self {
        SbvProfile { nodes: Vec::new(), left: Vec::new(), right: Vec::new() }
    }

    /// Builds a profile from node abscissae and one-sided limits.
    ///
    /// Nodes closer than `NODE_EPS` are merged, jumps smaller than `NODE_EPS`
    /// are erased, and nodes where the function is affine across are dropped.
    pub fn new(nodes: Vec<T>, left: Vec<T>, right: Vec<T>) -> Result<Self> {
        if nodes.len() != left.len() || nodes.len() != right.len() {
            return Err(Error::InvalidProfile("nodes and limits differ in length".into()));
        }
        if nodes.iter().chain(&left).chain(&right).any(|x| !x.is_finite()) {
            return Err(Error::InvalidProfile("non-finite entry".into()));
        }
        if nodes.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidProfile("nodes must be increasing".into()));
        }
        let eps = T::NODE_EPS;

        let (mut xs, mut ls, mut rs) = (Vec::new(), Vec::new(), Vec::<T>::new());
        for i in 0..nodes.len() {
            match xs.last() {
                Some(&last) if nodes[i] - last <= eps => *rs.last_mut().expect("nonempty") = right[i],
                _ => {
                    xs.push(nodes[i]);
                    ls.push(left[i]);
                    rs.push(right[i]);
                }
            }
        }
        if let (Some(l0), Some(rm)) = (ls.first_mut(), rs.last_mut()) {
            if l0.abs() > eps || rm.abs() > eps {
                return Err(Error::InvalidProfile("profile must vanish outside its first and last node".into()));
            }
            *l0 = T::zero();
            *rm = T::zero();
        }
        let last = xs.len().saturating_sub(1);
        for i in 0..xs.len() {
            if (ls[i] - rs[i]).abs() <= eps {
                let m = if i == 0 || i == last { T::zero() } else { (ls[i] + rs[i]) * T::half() };
                ls[i] = m;
                rs[i] = m;
            }
        }

        let mut f = SbvProfile { nodes: xs, left: ls, right: rs };
        f.drop_redundant_nodes();
        Ok(f)
    }

    /// Like [`new`](Self::new) but also checks the supplied slopes against the limits.
    pub fn with_slopes(nodes: Vec<T>, left: Vec<T>, right: Vec<T>, slopes: &[T], tol: T) -> Result<Self> {
        if !nodes.is_empty() && slopes.len() + 1 != nodes.len() {
            return Err(Error::InvalidProfile(format!(
                "expected {} slopes, got {}",
                nodes.len().saturating_sub(1),
                slopes.len()
            )));
        }
        for (j, &s) in slopes.iter().enumerate() {
            let dx = nodes[j + 1] - nodes[j];
            let expected = (left[j + 1] - right[j]) / dx;
            if (expected - s).abs() > tol * s.abs().max(T::one()) {
                return Err(Error::InvalidProfile(format!("slope {j} is {s} but the limits imply {expected}")));
            }
        }
        Self::new(nodes, left, right)
    }

    /// Like [`new`](Self::new) but rejects negative values.
    pub fn nonnegative(nodes: Vec<T>, left: Vec<T>, right: Vec<T>) -> Result<Self> {
        let f = Self::new(nodes, left, right)?;
        f.check_nonnegative()?;
        Ok(f)
    }

    fn drop_redundant_nodes(&mut self) {
        let eps = T::NODE_EPS;
        loop {
            let n = self.nodes.len();
            // slope of the piece ending at node i; zero outside the support
            let slope_into = |f: &Self, i: usize| {
                if i == 0 || i == n {
                    T::zero()
                } else {
                    (f.left[i] - f.right[i - 1]) / (f.nodes[i] - f.nodes[i - 1])
                }
            };
            let removable = (0..n).find(|&i| {
                if self.left[i] != self.right[i] {
                    return false;
                }
                let (sl, sr) = (slope_into(self, i), slope_into(self, i + 1));
                (sl - sr).abs() <= eps * sl.abs().max(sr.abs()).max(T::one())
            });
            match removable {
                Some(i) => {
                    self.nodes.remove(i);
                    self.left.remove(i);
                    self.right.remove(i);
                }
                None => return,
            }
        }
    }

    /// `h · 1_[a, b]`.
    pub fn indicator(a: T, b: T, h: T) -> Result<Self> {
        Self::new(vec![a, b], vec![T::zero(), h], vec![h, T::zero()])
    }

    /// Affine on `(a, b)` from `va` to `vb`, zero outside.
    pub fn affine(a: T, b: T, va: T, vb: T) -> Result<Self> {
        if !(b > a) {
            return Err(Error::InvalidProfile(format!("empty interval [{a}, {b}]")));
        }
        Self::new(vec![a, b], vec![T::zero(), vb], vec![va, T::zero()])
    }

    /// `height · max(0, 1 - |x - center| / half_width)`.
    pub fn tent(center: T, half_width: T, height: T) -> Result<Self> {
        if !(half_width > T::zero()) {
            return Err(Error::InvalidProfile("tent half width must be positive".into()));
        }
        let z = T::zero();
        Self::new(vec![center - half_width, center, center + half_width], vec![z, height, z], vec![z, height, z])
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn left_limits(&self) -> &[T] {
        &self.left
    }

    pub fn right_limits(&self) -> &[T] {
        &self.right
    }

    pub fn is_zero(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `[x_0, x_m]`, or `None` for the zero profile.
    pub fn extent(&self) -> Option<(T, T)> {
        Some((*self.nodes.first()?, *self.nodes.last()?))
    }

    pub fn pieces(&self) -> impl Iterator<Item = Piece<T>> + '_ {
        (0..self.nodes.len().saturating_sub(1)).map(move |j| Piece {
            start: self.nodes[j],
            end: self.nodes[j + 1],
            start_value: self.right[j],
            end_value: self.left[j + 1],
        })
    }

    pub fn slopes(&self) -> Vec<T> {
        self.pieces().map(|p| p.slope()).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.left.iter().chain(&self.right).all(|&x| x >= T::zero())
    }

    pub fn check_nonnegative(&self) -> Result<()> {
        if self.is_nonnegative() {
            Ok(())
        } else {
            Err(Error::InvalidProfile("profile takes negative values".into()))
        }
    }

    pub fn max_abs(&self) -> T {
        self.left.iter().chain(&self.right).fold(T::zero(), |m, x| m.max(x.abs()))
    }

    /// Index of the node within `NODE_EPS` of `x`.
    pub fn node_index(&self, x: T) -> Option<usize> {
        let i = self.nodes.partition_point(|&n| n < x);
        [i.checked_sub(1), Some(i)]
            .into_iter()
            .flatten()
            .find(|&k| k < self.nodes.len() && (self.nodes[k] - x).abs() <= T::NODE_EPS)
    }

    fn value_off_nodes(&self, x: T) -> T {
        let n = self.nodes.len();
        if n == 0 || x <= self.nodes[0] || x >= self.nodes[n - 1] {
            return T::zero();
        }
        let j = self.nodes.partition_point(|&t| t <= x) - 1;
        let p = Piece {
            start: self.nodes[j],
            end: self.nodes[j + 1],
            start_value: self.right[j],
            end_value: self.left[j + 1],
        };
        p.at(x)
    }

    /// Left and right limits at `x`.
    pub fn limits_at(&self, x: T) -> (T, T) {
        match self.node_index(x) {
            Some(i) => (self.left[i], self.right[i]),
            None => {
                let v = self.value_off_nodes(x);
                (v, v)
            }
        }
    }

    /// The approximate average `f̃(x)`, i.e. the value off the jump set.
    pub fn eval(&self, x: T) -> T {
        let (l, r) = self.limits_at(x);
        (l + r) * T::half()
    }

    /// `(f^∧(x), f^∨(x), f̃(x))`.
    pub fn eval_bounds(&self, x: T) -> Bounds<T> {
        let (l, r) = self.limits_at(x);
        Bounds { lower: l.min(r), upper: l.max(r), mean: (l + r) * T::half() }
    }

    /// Pointwise truncation `τ_M ∘ f`, with nodes added where `|f|` crosses `M`.
    pub fn truncate(&self, m: T) -> Result<Self> {
        if !(m >= T::zero()) {
            return Err(Error::InvalidProfile(format!("truncation level must be nonnegative, got {m}")));
        }
        let (mut xs, mut ls, mut rs) = (Vec::new(), Vec::new(), Vec::new());
        for (j, &x) in self.nodes.iter().enumerate() {
            xs.push(x);
            ls.push(clamp(self.left[j], m));
            rs.push(clamp(self.right[j], m));
            if j + 1 < self.nodes.len() {
                let p =
                    Piece { start: x, end: self.nodes[j + 1], start_value: self.right[j], end_value: self.left[j + 1] };
                let mut cuts: Vec<T> = [m, -m]
                    .into_iter()
                    .filter(|&level| (p.start_value - level) * (p.end_value - level) < T::zero())
                    .map(|level| p.start + (level - p.start_value) / p.slope())
                    .collect();
                cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
                for c in cuts {
                    let v = clamp(p.at(c), m);
                    xs.push(c);
                    ls.push(v);
                    rs.push(v);
                }
            }
        }
        Self::new(xs, ls, rs)
    }

    /// Sorted union of the node sets of several profiles.
    pub fn common_nodes(profiles: &[&Self]) -> Vec<T> {
        let mut xs: Vec<T> = profiles.iter().flat_map(|f| f.nodes.iter().copied()).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        xs.dedup_by(|a, b| (*a - *b).abs() <= T::NODE_EPS);
        xs
    }

    /// Pointwise `op(f, g)` of two profiles; `op(0, 0)` must be `0`.
    pub fn combine(&self, other: &Self, op: impl Fn(T, T) -> T) -> Result<Self> {
        let xs = Self::common_nodes(&[self, other]);
        let (mut ls, mut rs) = (Vec::with_capacity(xs.len()), Vec::with_capacity(xs.len()));
        for &x in &xs {
            let (fl, fr) = self.limits_at(x);
            let (gl, gr) = other.limits_at(x);
            ls.push(op(fl, gl));
            rs.push(op(fr, gr));
        }
        Self::new(xs, ls, rs)
    }

    /// `a·f + c·g`.
    pub fn linear_combination(a: T, f: &Self, c: T, g: &Self) -> Result<Self> {
        f.combine(g, |x, y| a * x + c * y)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |x, y| x - y)
    }

    pub fn scale(&self, s: T) -> Self {
        let mut f = self.clone();
        f.left.iter_mut().chain(f.right.iter_mut()).for_each(|x| *x = *x * s);
        if s == T::zero() {
            return Self::zero();
        }
        f
    }

    /// Rescales the abscissa: `x ↦ f(x / s)`.
    pub fn stretch(&self, s: T) -> Self {
        assert!(s > T::zero());
        let mut f = self.clone();
        f.nodes.iter_mut().for_each(|x| *x = *x * s);
        f
    }

    pub fn jumps(&self) -> Vec<JumpRecord<T>> {
        (0..self.nodes.len())
            .filter_map(|i| {
                let (l, r) = (self.left[i], self.right[i]);
                JumpDir::of_limits(l, r, T::zero()).map(|direction| JumpRecord {
                    location: self.nodes[i],
                    upper: l.max(r),
                    lower: l.min(r),
                    direction,
                })
            })
            .collect()
    }

    pub fn derivative_parts(&self) -> DerivativeParts<T> {
        DerivativeParts { slopes: self.pieces().map(|p| (p.start, p.end, p.slope())).collect(), jumps: self.jumps() }
    }

    pub fn total_variation(&self, g: &IntervalSet<T>) -> T {
        self.derivative_parts().total_variation(g)
    }

    /// Zero on every piece of the common refinement where `v` vanishes
    /// identically; elsewhere unchanged.
    pub fn restricted_to_support_of(&self, v: &Self) -> Result<Self> {
        let xs = Self::common_nodes(&[self, v]);
        let eps = T::NODE_EPS;
        let zero_piece = |k: usize| -> bool {
            // piece k lies between xs[k - 1] and xs[k]
            if k == 0 || k == xs.len() {
                return true;
            }
            v.limits_at(xs[k - 1]).1.abs() <= eps && v.limits_at(xs[k]).0.abs() <= eps
        };
        let (mut ls, mut rs) = (Vec::new(), Vec::new());
        for (k, &x) in xs.iter().enumerate() {
            let (l, r) = self.limits_at(x);
            ls.push(if zero_piece(k) { T::zero() } else { l });
            rs.push(if zero_piece(k + 1) { T::zero() } else { r });
        }
        Self::new(xs, ls, rs)
    }

    /// Largest mismatch of one-sided limits over the common nodes.
    pub fn max_difference(&self, other: &Self) -> T {
        let xs = Self::common_nodes(&[self, other]);
        xs.iter().fold(T::zero(), |m, &x| {
            let (a, b) = (self.limits_at(x), other.limits_at(x));
            m.max((a.0 - b.0).abs()).max((a.1 - b.1).abs())
        })
    }
}

/// The regions partitioning `J_v ∪ J_b` according to the relative size and
/// orientation of the jumps of `v` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JumpRegion {
    /// `J_v \ J_b`.
    A,
    /// `ν_v = ν_b`, `[b] < [v]/2`.
    B1,
    /// `ν_v = ν_b`, `[b] = [v]/2`.
    B2,
    /// `ν_v = ν_b`, `[b] > [v]/2`.
    B3,
    /// `ν_v = -ν_b`, `[b] < [v]/2`.
    B4,
    /// `ν_v = -ν_b`, `[b] = [v]/2`.
    B5,
    /// `ν_v = -ν_b`, `[b] > [v]/2`.
    B6,
    /// `J_b \ J_v`.
    C,
}

/// Upper and lower limits of `u1 = b - v/2` and `u2 = b + v/2` at a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ULimits<T> {
    pub u1_upper: T,
    pub u1_lower: T,
    pub u2_upper: T,
    pub u2_lower: T,
}

impl<T: Scalar> ULimits<T> {
    pub fn max_error(&self, o: &Self) -> T {
        (self.u1_upper - o.u1_upper)
            .abs()
            .max((self.u1_lower - o.u1_lower).abs())
            .max((self.u2_upper - o.u2_upper).abs())
            .max((self.u2_lower - o.u2_lower).abs())
    }
}

/// Region of a node given `(left, right)` limits of `v` and `b`.
pub fn classify_jump<T: Scalar>(v: (T, T), b: (T, T), eps: T) -> Option<JumpRegion> {
    let nv = JumpDir::of_limits(v.0, v.1, eps);
    let nb = JumpDir::of_limits(b.0, b.1, eps);
    let (jv, jb) = ((v.1 - v.0).abs(), (b.1 - b.0).abs());
    let half = jv * T::half();
    let cmp = if (jb - half).abs() <= eps {
        std::cmp::Ordering::Equal
    } else if jb < half {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Greater
    };
    use std::cmp::Ordering::*;
    Some(match (nv, nb) {
        (None, None) => return None,
        (Some(_), None) => JumpRegion::A,
        (None, Some(_)) => JumpRegion::C,
        (Some(dv), Some(db)) if dv == db => match cmp {
            Less => JumpRegion::B1,
            Equal => JumpRegion::B2,
            Greater => JumpRegion::B3,
        },
        (Some(_), Some(_)) => match cmp {
            Less => JumpRegion::B4,
            Equal => JumpRegion::B5,
            Greater => JumpRegion::B6,
        },
    })
}

/// Limits of `u1`, `u2` read off the region table.
pub fn predicted_u_limits<T: Scalar>(region: JumpRegion, v: (T, T), b: (T, T)) -> ULimits<T> {
    let h = T::half();
    let (v_lo, v_hi, v_avg) = (v.0.min(v.1), v.0.max(v.1), (v.0 + v.1) * h);
    let (b_lo, b_hi, b_avg) = (b.0.min(b.1), b.0.max(b.1), (b.0 + b.1) * h);
    let (u1_upper, u1_lower, u2_upper, u2_lower) = match region {
        JumpRegion::A => (b_avg - v_lo * h, b_avg - v_hi * h, b_avg + v_hi * h, b_avg + v_lo * h),
        JumpRegion::B1 | JumpRegion::B2 => (b_lo - v_lo * h, b_hi - v_hi * h, b_hi + v_hi * h, b_lo + v_lo * h),
        JumpRegion::B3 => (b_hi - v_hi * h, b_lo - v_lo * h, b_hi + v_hi * h, b_lo + v_lo * h),
        JumpRegion::B4 | JumpRegion::B5 => (b_hi - v_lo * h, b_lo - v_hi * h, b_lo + v_hi * h, b_hi + v_lo * h),
        JumpRegion::B6 => (b_hi - v_lo * h, b_lo - v_hi * h, b_hi + v_lo * h, b_lo + v_hi * h),
        JumpRegion::C => (b_hi - v_avg * h, b_lo - v_avg * h, b_hi + v_avg * h, b_lo + v_avg * h),
    };
    ULimits { u1_upper, u1_lower, u2_upper, u2_lower }
}

/// Limits of `u1`, `u2` computed directly from the one-sided values.
pub fn direct_u_limits<T: Scalar>(v: (T, T), b: (T, T)) -> ULimits<T> {
    let h = T::half();
    let u1 = (b.0 - v.0 * h, b.1 - v.1 * h);
    let u2 = (b.0 + v.0 * h, b.1 + v.1 * h);
    ULimits { u1_upper: u1.0.max(u1.1), u1_lower: u1.0.min(u1.1), u2_upper: u2.0.max(u2.1), u2_lower: u2.0.min(u2.1) }
}

/// Jump directions of `u1` and `u2` predicted from the region and `ν_v`, `ν_b`;
/// `None` where the function does not jump.
pub fn predicted_u_directions(
    region: JumpRegion,
    nu_v: Option<JumpDir>,
    nu_b: Option<JumpDir>,
) -> (Option<JumpDir>, Option<JumpDir>) {
    use JumpRegion::*;
    let minus_v = nu_v.map(JumpDir::flip);
    match region {
        A | B1 | B4 => (minus_v, nu_v),
        B2 => (None, nu_v),
        B3 => (nu_v, nu_v),
        B5 => (minus_v, None),
        B6 => (minus_v, minus_v),
        C => (nu_b, nu_b),
    }
}

/// Section-length profile `v` and barycenter profile `b` of a union of
/// simple polygon loops whose vertical sections are segments.
pub fn section_profiles<T: Scalar>(loops: &[Vec<Vec2<T>>]) -> Result<(SbvProfile<T>, SbvProfile<T>)> {
    let eps = T::NODE_EPS;
    let mut edges = Vec::new();
    for lp in loops {
        for i in 0..lp.len() {
            let (p, q) = (lp[i], lp[(i + 1) % lp.len()]);
            if (q.x - p.x).abs() > eps {
                edges.push(if p.x < q.x { (p, q) } else { (q, p) });
            }
        }
    }
    let mut xs: Vec<T> = loops.iter().flatten().map(|p| p.x).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    xs.dedup_by(|a, b| (*a - *b).abs() <= eps);
    if xs.len() < 2 {
        return Ok((SbvProfile::zero(), SbvProfile::zero()));
    }

    // (lower, upper) chord endpoints at both ends of each strip
    let mut strips: Vec<Option<((T, T), (T, T))>> = Vec::with_capacity(xs.len() - 1);
    for w in xs.windows(2) {
        let (xa, xb) = (w[0], w[1]);
        let mut lines: Vec<(T, T)> = edges
            .iter()
            .filter(|(p, q)| p.x <= xa + eps && q.x >= xb - eps)
            .map(|&(p, q)| {
                let s = (q.y - p.y) / (q.x - p.x);
                (p.y + s * (xa - p.x), p.y + s * (xb - p.x))
            })
            .collect();
        match lines.len() {
            0 => strips.push(None),
            2 => {
                let mid = |l: &(T, T)| l.0 + l.1;
                lines.sort_by(|a, b| mid(a).partial_cmp(&mid(b)).expect("finite"));
                strips.push(Some(((lines[0].0, lines[1].0), (lines[0].1, lines[1].1))));
            }
            _ => return Err(Error::SectionNotSegment { x: ((xa + xb) * T::half()).to_f64_lossy() }),
        }
    }

    let h = T::half();
    let at_start = |k: usize| strips.get(k).copied().flatten().map(|(s, _)| s);
    let at_end = |k: usize| k.checked_sub(1).and_then(|j| strips[j]).map(|(_, e)| e);
    let (mut vl, mut vr, mut bl, mut br) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for k in 0..xs.len() {
        let (l, r) = (at_end(k), at_start(k));
        vl.push(l.map_or(T::zero(), |(lo, hi)| hi - lo));
        vr.push(r.map_or(T::zero(), |(lo, hi)| hi - lo));
        bl.push(l.map_or(T::zero(), |(lo, hi)| (hi + lo) * h));
        br.push(r.map_or(T::zero(), |(lo, hi)| (hi + lo) * h));
    }
    Ok((SbvProfile::new(xs.clone(), vl, vr)?, SbvProfile::new(xs, bl, br)?))
}

/// Barycenter profile `b_E` of a polygon whose section lengths are `v`.
pub fn barycenter_of_polygon_sections<T: Scalar>(
    loops: &[Vec<Vec2<T>>],
    v: &SbvProfile<T>,
    tol: T,
) -> Result<SbvProfile<T>> {
    let (sections, b) = section_profiles(loops)?;
    let err = sections.max_difference(v);
    if err > tol * v.max_abs().max(T::one()) {
        return Err(Error::ProfileMismatch(format!("section lengths differ from v by {err}")));
    }
    Ok(b)
}
