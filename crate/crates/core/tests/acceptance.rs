//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use aniso_core::corpus::{
    random_atomic_measure, random_ellipse, random_polygon, random_symmetral, random_v, random_vset,
};
use aniso_core::measure::{parallelogram_defect, pointwise_cone_condition, DiscreteVectorMeasure};
use aniso_core::perimeter::{body_perimeter, perimeter_from_vb, polygon_perimeter, steiner_gap, VDistributedSet};
use aniso_core::rigidity::{check_equality_membership, piece_normals, verdict, Verdict};
use aniso_core::steiner::{support_symmetry_check, symmetrize_polygon};
use aniso_core::{Body, Intervals, Point, Profile, Tol};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    o.detail = format!("{}; {:.3}s", o.detail, elapsed.as_secs_f64());
    if let Some(limit) = limit {
        if elapsed > limit {
            o.pass = false;
            o.detail.push_str(&format!(" exceeds {}s", limit.as_secs_f64()));
        }
    }
    o
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn tol() -> Tol<f64> {
    Tol::default()
}

fn all() -> Intervals {
    Intervals::everything()
}

fn wulff_identity() -> Outcome {
    let mut r = rng(1);
    let mut bodies: Vec<Body> = (0..50).map(|_| random_polygon(&mut r)).collect();
    bodies.extend((0..5).map(|_| random_ellipse(&mut r)));
    let worst =
        bodies.iter().map(|k| (body_perimeter(k, k) - 2.0 * k.area()).abs() / (2.0 * k.area())).fold(0.0f64, f64::max);
    outcome(worst <= 1e-9, format!("55 bodies, max relative error {worst:.2e}"))
}

fn sheared_sweep() -> Outcome {
    let ks = Body::diamond(1.0);
    let v = Profile::indicator(0.0, 1.0, 2.0).unwrap();
    let mut ok = true;
    let mut worst = 0.0f64;
    for k in 0..6 {
        let beta = k as f64 * PI / 12.0;
        let s = VDistributedSet::new(v.clone(), Profile::affine(0.0, 1.0, 0.0, beta.tan()).unwrap()).unwrap();
        let p = perimeter_from_vb(&s, &ks, &all()).total;
        let expected = if k <= 3 { 6.0 } else { 4.0 + 2.0 * beta.tan() };
        worst = worst.max((p - expected).abs());
        let equal = check_equality_membership(&s, &ks, tol()).unwrap().all_ok();
        ok &= (p - expected).abs() <= 1e-9 && equal == (k <= 3) && (k <= 3 || p > 6.0);
    }
    outcome(ok, format!("6 angles, max error {worst:.2e}, equality flips after pi/4"))
}

struct Corpus {
    bodies: Vec<Body>,
    sets: Vec<VDistributedSet<f64>>,
}

fn corpus() -> Corpus {
    let mut r = rng(3);
    Corpus {
        bodies: (0..10).map(|_| random_symmetral(&mut r)).collect(),
        sets: (0..500).map(|_| random_vset(&mut r)).collect(),
    }
}

fn oracle_equivalence(c: &Corpus) -> Outcome {
    let mut worst = 0.0f64;
    let mut fails = 0;
    for k in &c.bodies {
        for s in &c.sets {
            let total = perimeter_from_vb(s, k, &all()).total;
            let oracle = polygon_perimeter(&s.to_polygon_set(), k, &all());
            let err = (total - oracle).abs() / (1.0 + total);
            worst = worst.max(err);
            if err > 1e-8 {
                fails += 1;
            }
        }
    }
    outcome(fails == 0, format!("5000 pairs, {fails} over tolerance, max scaled error {worst:.2e}"))
}

fn steiner_inequality(c: &Corpus) -> Outcome {
    let mut min_gap = f64::INFINITY;
    for k in &c.bodies {
        for s in &c.sets {
            min_gap = min_gap.min(steiner_gap(s, k, &all(), tol()).unwrap());
        }
    }
    outcome(min_gap >= -1e-9, format!("5000 pairs, min gap {min_gap:.2e}"))
}

fn equality_soundness(c: &Corpus) -> Outcome {
    let (mut mismatches, mut equal, mut equal_nonzero_b) = (0, 0, 0);
    for k in &c.bodies {
        for s in &c.sets {
            let r = check_equality_membership(s, k, tol()).unwrap();
            if r.all_ok() != (r.gap <= 1e-8) {
                mismatches += 1;
            }
            if r.all_ok() {
                equal += 1;
                if !s.b().is_zero() {
                    equal_nonzero_b += 1;
                }
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("5000 pairs, {mismatches} discrepancies, {equal} equality cases ({equal_nonzero_b} with b != 0)"),
    )
}

fn duality() -> Outcome {
    let mut r = rng(6);
    let mut involution = 0.0f64;
    let mut involution_ok = true;
    for _ in 0..100 {
        let k = random_polygon(&mut r);
        let back = k.polar().polar();
        match back.as_polygon().and_then(|p| p.vertex_error(k.as_polygon().unwrap())) {
            Some(e) => involution = involution.max(e),
            None => involution_ok = false,
        }
    }
    let mut bodies: Vec<Body> = (0..10).map(|_| random_polygon(&mut r)).collect();
    bodies.extend((0..2).map(|_| random_ellipse(&mut r)));
    let mut fenchel_violations = 0;
    for i in 0..10_000 {
        let k = &bodies[i % bodies.len()];
        let x = Point::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let y = Point::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        if x.dot(y) > k.gauge(x) * k.support(y) + 1e-12 * (1.0 + x.norm() * y.norm()) {
            fenchel_violations += 1;
        }
    }
    let mut equality_err = 0.0f64;
    for k in &bodies {
        for _ in 0..200 {
            let x = k.boundary_point(Point::from_angle(r.gen_range(0.0..2.0 * PI)));
            if let Some(nu) = k.outward_normal(x, tol()) {
                equality_err = equality_err.max((x.dot(nu) - k.gauge(x) * k.support(nu)).abs());
            }
        }
    }
    let pass = involution_ok && involution <= 1e-9 && fenchel_violations == 0 && equality_err <= 1e-9;
    outcome(
        pass,
        format!(
            "involution error {involution:.2e}, {fenchel_violations} Fenchel violations in 10^4, equality error {equality_err:.2e}"
        ),
    )
}

/// `(h, g)` with `h ± g` in the normal cone of one vertex of `k`.
fn cone_pair<R: Rng>(r: &mut R, k: &Body) -> (Point, Point) {
    let p = k.as_polygon().unwrap();
    let n = p.len();
    let i = r.gen_range(0..n);
    let (a, b) = (p.edge_normal((i + n - 1) % n), p.edge_normal(i));
    let y1 = (a * r.gen_range(0.0..1.0) + b * r.gen_range(0.0..1.0)) * r.gen_range(0.1..2.0);
    let y2 = (a * r.gen_range(0.0..1.0) + b * r.gen_range(0.0..1.0)) * r.gen_range(0.1..2.0);
    ((y1 + y2) * 0.5, (y1 - y2) * 0.5)
}

fn anisotropic_tv() -> Outcome {
    let mut r = rng(7);
    let bodies = [Body::diamond(1.0), Body::regular(5, 1.3, 0.2), Body::ellipse(2.0, 0.5).unwrap()];
    let g = Intervals::interval(0.0, 1.0).unwrap();
    let mut oracle_err = 0.0f64;
    let mut unseparated = 0;
    for _ in 0..50 {
        let mu = random_atomic_measure(&mut r);
        for k in &bodies {
            match mu.separating_depth(&g) {
                Some(d) => {
                    let exact = mu.anisotropic_total_variation(k, &g);
                    oracle_err = oracle_err.max((mu.sup_partition_oracle(k, &g, d) - exact).abs());
                }
                None => unseparated += 1,
            }
        }
    }
    let mut violations = 0;
    for _ in 0..10_000 {
        let mu = random_atomic_measure(&mut r);
        let nu = random_atomic_measure(&mut r);
        let k = &bodies[r.gen_range(0..bodies.len())];
        if !parallelogram_defect(&mu, &nu, k, &all()).holds(1e-12) {
            violations += 1;
        }
    }
    let mut equality_mismatch = 0;
    let polys = [Body::diamond(1.0), Body::regular(5, 1.3, 0.2), Body::regular(7, 0.8, 1.0)];
    for case in 0..200 {
        let k = &polys[case % polys.len()];
        let n_atoms = r.gen_range(1..=4);
        let (mut hs, mut gs) = (Vec::new(), Vec::new());
        for j in 0..n_atoms {
            let x = j as f64 / n_atoms as f64;
            // the first 100 cases are built to satisfy the cone condition
            let (h, gv) = if case < 100 {
                cone_pair(&mut r, k)
            } else {
                (
                    Point::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)),
                    Point::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)),
                )
            };
            hs.push((x, h));
            gs.push((x, gv));
        }
        let mu = DiscreteVectorMeasure::atomic(hs).unwrap();
        let nu = DiscreteVectorMeasure::atomic(gs).unwrap();
        let eq = parallelogram_defect(&mu, &nu, k, &all()).is_equality(1e-9);
        let cone = pointwise_cone_condition(&mu, &nu, k, &all(), tol());
        if eq != cone || (case < 100 && !eq) {
            equality_mismatch += 1;
        }
    }
    let pass = unseparated == 0 && oracle_err <= 1e-12 && violations == 0 && equality_mismatch == 0;
    outcome(
        pass,
        format!(
            "oracle error {oracle_err:.2e}, {violations} parallelogram violations in 10^4, {equality_mismatch} equality/cone mismatches in 200"
        ),
    )
}

/// Profile whose pieces take slopes exposing edges of `k` about half the time.
fn aligned_v<R: Rng>(r: &mut R, k: &Body) -> Profile {
    let v = random_v(r);
    let Some(normals) = k.normals_set().finite().map(|n| n.iter().filter(|n| n.y > 1e-6).copied().collect::<Vec<_>>())
    else {
        return v;
    };
    if normals.is_empty() || r.gen_bool(0.5) {
        return v;
    }
    // continuous on the inside with slopes exposing edges, jumps at both ends
    let mut xs = vec![v.nodes()[0]];
    let mut ys = vec![r.gen_range(0.5..2.0)];
    for _ in 0..r.gen_range(1..=4) {
        let n = normals[r.gen_range(0..normals.len())];
        let len = r.gen_range(0.2..1.0);
        let y = ys.last().unwrap() - 2.0 * n.x / n.y * len;
        if y <= 0.05 {
            break;
        }
        xs.push(xs.last().unwrap() + len);
        ys.push(y);
    }
    let m = xs.len();
    if m < 2 {
        return v;
    }
    let mut left = ys.clone();
    let mut right = ys;
    left[0] = 0.0;
    right[m - 1] = 0.0;
    Profile::nonnegative(xs, left, right).unwrap_or(v)
}

fn rigidity_triangle() -> Outcome {
    let mut r = rng(8);
    let (mut disagreements, mut not_guaranteed, mut witnesses_bad, mut ellipse_bad) = (0, 0, 0, 0);
    for case in 0..200 {
        let ks = if case % 4 == 3 {
            Body::ellipse(r.gen_range(0.3..2.0), r.gen_range(0.3..2.0)).unwrap()
        } else if case % 4 == 2 {
            Body::diamond(r.gen_range(0.5..2.0))
        } else {
            random_symmetral(&mut r)
        };
        let v = aligned_v(&mut r, &ks);
        let normals = ks.normals_set();
        for (_, nu) in piece_normals(&v) {
            if normals.is_in_closure(nu, tol().get()) != ks.is_extreme_of_polar(nu, tol()).unwrap() {
                disagreements += 1;
            }
        }
        let report = verdict(&VDistributedSet::symmetric(v.clone()).unwrap(), &ks, tol()).unwrap();
        match (&ks, report.verdict) {
            (Body::Ellipse(_), Verdict::NotGuaranteed) => ellipse_bad += 1,
            (Body::Polygon(_), Verdict::NotGuaranteed) => {
                not_guaranteed += 1;
                let valid = report
                    .witness
                    .as_ref()
                    .is_some_and(|w| !w.b().is_zero() && steiner_gap(w, &ks, &all(), tol()).unwrap().abs() <= 1e-9);
                if !valid {
                    witnesses_bad += 1;
                }
            }
            _ => {}
        }
    }
    let pass = disagreements == 0 && witnesses_bad == 0 && ellipse_bad == 0;
    outcome(
        pass,
        format!(
            "200 pairs, {disagreements} closure/extreme disagreements, {not_guaranteed} NotGuaranteed with {witnesses_bad} missing witnesses, {ellipse_bad} non-equivalent ellipses"
        ),
    )
}

fn steiner_properties() -> Outcome {
    let mut r = rng(9);
    let (mut area_err, mut bad) = (0.0f64, 0);
    for _ in 0..100 {
        let k = random_polygon(&mut r);
        let shift = Point::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let p = k.as_polygon().unwrap().translate(shift);
        let (sym, _) = symmetrize_polygon(&p).unwrap();
        area_err = area_err.max((sym.area() - p.area()).abs());
        let convex = sym.is_strictly_convex(0.0);
        let sym_body =
            Body::from_polygon(sym.translate(Point::new(-(sym.x_range().0 + sym.x_range().1) / 2.0, 0.0)), tol());
        let symmetric = sym_body.is_ok_and(|b| support_symmetry_check(&b, tol()));
        if !convex || !symmetric {
            bad += 1;
        }
    }
    outcome(
        area_err <= 1e-9 && bad == 0,
        format!("100 polygons, max area error {area_err:.2e}, {bad} not convex or not symmetric"),
    )
}

fn main() {
    let c = corpus();
    let results = [
        ("1 Wulff identity", timed(Some(Duration::from_secs(1)), wulff_identity)),
        ("2 sheared rectangle sweep", timed(Some(Duration::from_secs(1)), sheared_sweep)),
        ("3 formula against polygon oracle", timed(Some(Duration::from_secs(30)), || oracle_equivalence(&c))),
        ("4 Steiner inequality", timed(None, || steiner_inequality(&c))),
        ("5 equality characterization", timed(None, || equality_soundness(&c))),
        ("6 duality suite", timed(None, duality)),
        ("7 anisotropic total variation", timed(None, anisotropic_tv)),
        ("8 rigidity criterion triangle", timed(None, rigidity_triangle)),
        ("9 symmetral convexity and area", timed(None, steiner_properties)),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
