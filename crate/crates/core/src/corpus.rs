//! Seeded random generators for bodies, profiles and measures.

use rand::Rng;

use crate::body::{ConvexBody, ConvexPolygon};
use crate::measure::DiscreteVectorMeasure;
use crate::perimeter::VDistributedSet;
use crate::sbv1d::SbvProfile;
use crate::scalar::Tol;
use crate::steiner::steiner_symmetrize;
use crate::vec2::Vec2;

/// Hull of 3 to 10 points at sorted random angles and radii in `[0.5, 1.5]`,
/// redrawn until the origin is interior.
pub fn random_polygon<R: Rng>(rng: &mut R) -> ConvexBody<f64> {
    loop {
        let n = rng.gen_range(3..=10);
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let pts: Vec<Vec2<f64>> = angles.iter().map(|&t| Vec2::from_angle(t) * rng.gen_range(0.5..1.5)).collect();
        let Ok(hull) = ConvexPolygon::hull(&pts, Tol::default()) else {
            continue;
        };
        if let Ok(k) = ConvexBody::from_polygon(hull, Tol::default()) {
            return k;
        }
    }
}

/// Ellipse with semi-axes in `[0.3, 3]`.
pub fn random_ellipse<R: Rng>(rng: &mut R) -> ConvexBody<f64> {
    ConvexBody::ellipse(rng.gen_range(0.3..3.0), rng.gen_range(0.3..3.0)).expect("positive axes")
}

/// Steiner symmetral of [`random_polygon`].
pub fn random_symmetral<R: Rng>(rng: &mut R) -> ConvexBody<f64> {
    steiner_symmetrize(&random_polygon(rng)).expect("convex input").body
}

/// Nonnegative profile with 2 to 6 nodes in `[-2, 2]`, jumps at interior
/// nodes with probability one half, and occasional zero pieces.
pub fn random_v<R: Rng>(rng: &mut R) -> SbvProfile<f64> {
    loop {
        let n = rng.gen_range(2..=6);
        let mut xs: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        if xs.windows(2).any(|w| w[1] - w[0] < 0.05) {
            continue;
        }
        let mut left = vec![0.0; n];
        let mut right = vec![0.0; n];
        for i in 0..n {
            let value = |rng: &mut R| if rng.gen_bool(0.1) { 0.0 } else { rng.gen_range(0.1..2.5) };
            let l = value(rng);
            let r = if rng.gen_bool(0.5) { value(rng) } else { l };
            if i > 0 {
                left[i] = l;
            }
            if i + 1 < n {
                right[i] = r;
            }
        }
        let v = SbvProfile::nonnegative(xs, left, right).expect("valid profile");
        if !v.is_zero() {
            return v;
        }
    }
}

/// Barycenter profile on the nodes of `v` and up to two extra nodes: zero in
/// a third of the cases, small and continuous in another third, arbitrary
/// with jumps otherwise. It is zeroed where `v` vanishes.
pub fn random_b<R: Rng>(rng: &mut R, v: &SbvProfile<f64>) -> SbvProfile<f64> {
    let Some((lo, hi)) = v.extent() else {
        return SbvProfile::zero();
    };
    let mode = rng.gen_range(0..3);
    if mode == 0 {
        return SbvProfile::zero();
    }
    let mut xs = v.nodes().to_vec();
    for _ in 0..rng.gen_range(0..=2) {
        xs.push(rng.gen_range(lo..hi));
    }
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let n = xs.len();
    let (mut left, mut right) = (vec![0.0; n], vec![0.0; n]);
    for i in 0..n {
        let (l, r) = if mode == 1 {
            let y = rng.gen_range(-0.15..0.15);
            (y, y)
        } else {
            (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        };
        if i > 0 {
            left[i] = l;
        }
        if i + 1 < n {
            right[i] = r;
        }
    }
    let b = SbvProfile::new(xs, left, right).expect("valid profile");
    b.restricted_to_support_of(v).expect("valid profile")
}

pub fn random_vset<R: Rng>(rng: &mut R) -> VDistributedSet<f64> {
    let v = random_v(rng);
    let b = random_b(rng, &v);
    VDistributedSet::restricted(v, b).expect("nonnegative v")
}

/// Up to 6 atoms at distinct points of `[0, 1)` with vector entries in `[-2, 2]`.
pub fn random_atomic_measure<R: Rng>(rng: &mut R) -> DiscreteVectorMeasure<f64> {
    let n = rng.gen_range(1..=6);
    let mut at: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    at.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    at.dedup();
    DiscreteVectorMeasure::atomic(
        at.into_iter().map(|x| (x, Vec2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))).collect::<Vec<_>>(),
    )
    .expect("distinct atoms")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steiner::support_symmetry_check;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let k = random_symmetral(&mut rng);
            assert!(support_symmetry_check(&k, Tol::default()));
            let s = random_vset(&mut rng);
            assert!(s.v().is_nonnegative());
            assert!(s.v().nodes().len() <= 6);
            assert!(!random_atomic_measure(&mut rng).atoms().is_empty());
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_vset(&mut ChaCha8Rng::seed_from_u64(3));
        let b = random_vset(&mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
    }
}
