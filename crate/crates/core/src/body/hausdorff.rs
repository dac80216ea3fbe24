use super::ConvexBody;
use crate::scalar::Scalar;
use crate::vec2::Vec2;

/// Hausdorff distance between two planar convex bodies.
///
/// For two polygons the distance is exact: `x ↦ dist(x, B)` is convex, so the
/// supremum over `A` is attained at a vertex of `A`. When an ellipse is
/// involved the supremum `sup_{|u|=1} |φ_A(u) - φ_B(u)|` is located on a
/// dense angular grid and refined by golden-section search.
pub fn hausdorff_distance<T: Scalar>(a: &ConvexBody<T>, b: &ConvexBody<T>) -> T {
    match (a, b) {
        (ConvexBody::Polygon(pa), ConvexBody::Polygon(pb)) => {
            let one_sided = |from: &super::ConvexPolygon<T>, to: &super::ConvexPolygon<T>| {
                from.vertices().iter().map(|&v| to.distance(v)).fold(T::zero(), T::max)
            };
            one_sided(pa, pb).max(one_sided(pb, pa))
        }
        _ => support_gap_refined(a, b),
    }
}

fn support_gap_refined<T: Scalar>(a: &ConvexBody<T>, b: &ConvexBody<T>) -> T {
    const GRID: usize = 4096;
    let gap = |t: T| (a.support(Vec2::from_angle(t)) - b.support(Vec2::from_angle(t))).abs();
    let step = T::TAU() / T::lit(GRID as f64);
    let mut best_k = 0;
    let mut best = T::zero();
    for k in 0..GRID {
        let g = gap(step * T::lit(k as f64));
        if g > best {
            best = g;
            best_k = k;
        }
    }
    // golden-section search on the bracketing cell pair
    let center = step * T::lit(best_k as f64);
    let (mut lo, mut hi) = (center - step, center + step);
    let ratio = T::lit(0.618_033_988_749_894_8);
    for _ in 0..80 {
        let m1 = hi - (hi - lo) * ratio;
        let m2 = lo + (hi - lo) * ratio;
        if gap(m1) > gap(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    best.max(gap((lo + hi) * T::half()))
}
