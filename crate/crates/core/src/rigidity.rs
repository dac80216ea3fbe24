//! Equality cases of the anisotropic Steiner inequality for piecewise-linear
//! profiles and the normal-set criterion under which anisotropic and
//! Euclidean rigidity are equivalent.
//!
//! Verdicts never assert rigidity or its failure. `NotGuaranteed` only means
//! the normal-set criterion does not apply; a witness, when found, is a set
//! with equality in the inequality whose barycenter is not constant.

use serde::{Deserialize, Serialize};

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::perimeter::{steiner_gap, VDistributedSet};
use crate::sbv1d::{JumpDir, SbvProfile};
use crate::scalar::{Scalar, Tol};
use crate::steiner::support_symmetry_check;
use crate::vec2::Vec2;

/// Affine piece on which the cone condition fails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PieceFailure<T> {
    pub start: T,
    pub end: T,
    pub v_slope: T,
    pub b_slope: T,
    pub defect: T,
}

/// Node at which `2[b] ≤ [v]` fails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpFailure<T> {
    pub at: T,
    pub v_jump: T,
    pub b_jump: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CantorCondition {
    /// Piecewise-linear profiles carry no Cantor part.
    #[serde(rename = "vacuous-SBV")]
    VacuousSbv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Equivalent,
    NotGuaranteed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EqualityReport<T> {
    pub sections_ok: bool,
    pub cone_ok: bool,
    pub cone_failures: Vec<PieceFailure<T>>,
    pub jump_ok: bool,
    pub jump_failures: Vec<JumpFailure<T>>,
    pub cantor_condition: CantorCondition,
    pub gap: T,
}

impl<T> EqualityReport<T> {
    pub fn all_ok(&self) -> bool {
        self.sections_ok && self.cone_ok && self.jump_ok
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalCriterion<T> {
    pub r1_ok: bool,
    pub r2_ok: bool,
    pub failing_normals: Vec<Vec2<T>>,
    /// Pieces of `v` whose upper normal is not in the closed normal set.
    pub failing_pieces: Vec<(T, T)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RigidityReport<T> {
    pub equality: EqualityReport<T>,
    pub r1_ok: bool,
    pub r2_ok: bool,
    pub r2_reason: &'static str,
    pub failing_normals: Vec<Vec2<T>>,
    pub verdict: Verdict,
    pub witness: Option<VDistributedSet<T>>,
}

fn require_symmetral<T: Scalar>(ks: &ConvexBody<T>, tol: Tol<T>) -> Result<()> {
    if support_symmetry_check(ks, tol) {
        Ok(())
    } else {
        Err(Error::NotASymmetral)
    }
}

/// Conditions i to iii for `W[v, b]` against `K^s`, together with the gap.
pub fn check_equality_membership<T: Scalar>(
    s: &VDistributedSet<T>,
    ks: &ConvexBody<T>,
    tol: Tol<T>,
) -> Result<EqualityReport<T>> {
    require_symmetral(ks, tol)?;
    let eps = T::NODE_EPS;
    let h = T::half();
    let one = T::one();
    let xs = s.nodes();

    let mut cone_failures = Vec::new();
    for w in xs.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let (v0, v1) = (s.v().limits_at(x0).1, s.v().limits_at(x1).0);
        if v0 <= eps && v1 <= eps {
            continue;
        }
        let dv = (v1 - v0) / (x1 - x0);
        let db = (s.b().limits_at(x1).0 - s.b().limits_at(x0).1) / (x1 - x0);
        let a = ks.is_additive(Vec2::new(-dv * h + db, one), Vec2::new(-dv * h - db, one), tol);
        if !a.additive {
            cone_failures.push(PieceFailure { start: x0, end: x1, v_slope: dv, b_slope: db, defect: a.defect });
        }
    }

    let mut jump_failures = Vec::new();
    for &x in &xs {
        let ((vl, vr), (bl, br)) = s.limits_at(x);
        if vl.min(vr) <= eps {
            continue;
        }
        let (jv, jb) = ((vr - vl).abs(), (br - bl).abs());
        if JumpDir::of_limits(bl, br, eps).is_some() && T::two() * jb > jv + tol.get() * vl.max(vr).max(one) {
            jump_failures.push(JumpFailure { at: x, v_jump: jv, b_jump: jb });
        }
    }

    Ok(EqualityReport {
        sections_ok: true,
        cone_ok: cone_failures.is_empty(),
        cone_failures,
        jump_ok: jump_failures.is_empty(),
        jump_failures,
        cantor_condition: CantorCondition::VacuousSbv,
        gap: steiner_gap(s, ks, &IntervalSet::everything(), tol)?,
    })
}

/// Upper normal `(-v'/2, 1)/|·|` of `F[v]` on each piece where `v > 0`.
pub fn piece_normals<T: Scalar>(v: &SbvProfile<T>) -> Vec<((T, T), Vec2<T>)> {
    v.pieces()
        .filter(|p| !p.is_zero(T::NODE_EPS) && !p.is_empty())
        .map(|p| {
            let nu = Vec2::new(-p.slope() * T::half(), T::one()).normalized().expect("nonzero");
            ((p.start, p.end), nu)
        })
        .collect()
}

/// Whether every normal of `∂*F[v]` off a null set lies in the closed normal
/// set of `K^s`. The second condition concerns the Cantor part and holds
/// vacuously here.
#[allow(non_snake_case)]
pub fn check_R1_R2<T: Scalar>(v: &SbvProfile<T>, ks: &ConvexBody<T>, tol: Tol<T>) -> Result<NormalCriterion<T>> {
    require_symmetral(ks, tol)?;
    let normals = ks.normals_set();
    let mut failing_normals: Vec<Vec2<T>> = Vec::new();
    let mut failing_pieces = Vec::new();
    for (piece, nu) in piece_normals(v) {
        if !normals.is_in_closure(nu, tol.get()) {
            if !failing_normals.iter().any(|m| m.approx_eq(nu, tol.get())) {
                failing_normals.push(nu);
            }
            failing_pieces.push(piece);
        }
    }
    Ok(NormalCriterion { r1_ok: failing_pieces.is_empty(), r2_ok: true, failing_normals, failing_pieces })
}

/// Largest `g` with `y0 ± (g, 0)` in the normal cone of the polygon vertex
/// exposed by `y0`; zero when `y0` exposes an edge.
fn exact_cone_halfwidth<T: Scalar>(ks: &ConvexBody<T>, y0: Vec2<T>) -> Option<T> {
    let p = ks.as_polygon()?;
    let n = p.len();
    let i = (0..n).max_by(|&a, &b| y0.dot(p.vertex(a)).partial_cmp(&y0.dot(p.vertex(b))).expect("finite"))?;
    let z = p.vertex(i);
    [p.vertex(i + n - 1), p.vertex(i + 1)]
        .iter()
        .map(|&w| {
            let d = z - w;
            if d.x == T::zero() {
                T::infinity()
            } else {
                y0.dot(d) / d.x.abs()
            }
        })
        .fold(None, |acc: Option<T>, g| Some(acc.map_or(g, |a| a.min(g))))
        .filter(|g| g.is_finite() && *g > T::zero())
}

/// A set `W[v, b]` with zero gap and nonconstant `b`: `b` is a tent of slope
/// `±g` on the first failing piece where a nonzero `g` keeps the cone
/// condition. `None` when no such `g` is found.
pub fn construct_nonrigid_witness<T: Scalar>(
    v: &SbvProfile<T>,
    ks: &ConvexBody<T>,
    tol: Tol<T>,
) -> Result<Option<VDistributedSet<T>>> {
    let criterion = check_R1_R2(v, ks, tol)?;
    let diam = ks.diameter();
    let h = T::half();
    for &(x0, x1) in &criterion.failing_pieces {
        let y0 = Vec2::new(-(v.limits_at(x1).0 - v.limits_at(x0).1) / (x1 - x0) * h, T::one());
        let works = |g: T| ks.is_additive(y0 + Vec2::new(g, T::zero()), y0 - Vec2::new(g, T::zero()), tol).additive;
        let grid = (0..41).map(|i| diam * (T::lit(i as f64) / T::lit(20.0) - T::one())).filter(|g| *g != T::zero());
        let found = grid.filter(|&g| works(g)).min_by(|a, b| a.abs().partial_cmp(&b.abs()).expect("finite"));
        let g = found.or_else(|| exact_cone_halfwidth(ks, y0).map(|g| g * h).filter(|&g| works(g)));
        let Some(g) = g else {
            continue;
        };
        let mid = (x0 + x1) * h;
        let b = SbvProfile::new(
            vec![x0, mid, x1],
            vec![T::zero(), g * (mid - x0), T::zero()],
            vec![T::zero(), g * (mid - x0), T::zero()],
        )?;
        let s = VDistributedSet::new(v.clone(), b)?;
        if steiner_gap(&s, ks, &IntervalSet::everything(), tol)?.abs() <= tol.get() * (T::one() + diam) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Equality conditions for `s` and the normal-set criterion for its `v`.
pub fn verdict<T: Scalar>(s: &VDistributedSet<T>, ks: &ConvexBody<T>, tol: Tol<T>) -> Result<RigidityReport<T>> {
    let equality = check_equality_membership(s, ks, tol)?;
    let criterion = check_R1_R2(s.v(), ks, tol)?;
    let verdict = if criterion.r1_ok && criterion.r2_ok { Verdict::Equivalent } else { Verdict::NotGuaranteed };
    let witness = match verdict {
        Verdict::Equivalent => None,
        Verdict::NotGuaranteed => construct_nonrigid_witness(s.v(), ks, tol)?,
    };
    Ok(RigidityReport {
        equality,
        r1_ok: criterion.r1_ok,
        r2_ok: criterion.r2_ok,
        r2_reason: "D^c v = 0",
        failing_normals: criterion.failing_normals,
        verdict,
        witness,
    })
}

/// [`verdict`] for `F[v]` itself.
pub fn verdict_for_profile<T: Scalar>(v: &SbvProfile<T>, ks: &ConvexBody<T>, tol: Tol<T>) -> Result<RigidityReport<T>> {
    verdict(&VDistributedSet::symmetric(v.clone())?, ks, tol)
}
