//! Worked examples and the randomized consistency run.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::Subcommand;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use aniso_core::corpus::{random_symmetral, random_vset};
use aniso_core::io;
use aniso_core::perimeter::{perimeter_from_vb, polygon_perimeter, steiner_gap, VDistributedSet};
use aniso_core::rigidity::{check_equality_membership, piece_normals, verdict, Verdict};
use aniso_core::{Body, Intervals, Point, Profile, Tol};

use crate::commands::normals_json;
use crate::svg::{Plot, Style};
use crate::{CliError, Outcome};

#[derive(Debug, Subcommand)]
pub enum Which {
    /// Sheared rectangle over the diamond for β = 0, π/12, ..., 5π/12.
    Fig2 {
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Crystalline body whose normals contain every normal of F[v].
    Fig5 {
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Body with C¹ boundary: every normal lies in the closed normal set.
    Fig6 {
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Formula against polygon oracle, Steiner gap sign and equality soundness on a seeded corpus.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random (v, b) pairs.
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Number of random symmetral bodies.
        #[arg(long, default_value_t = 10)]
        bodies: usize,
    },
}

pub fn run(which: Which, tol: Tol<f64>) -> Result<Outcome, CliError> {
    match which {
        Which::Fig2 { svg } => fig2(svg, tol),
        Which::Fig5 { svg } => overlay(Body::diamond(1.0), Profile::tent(0.0, 1.0, 2.0)?, svg, tol),
        Which::Fig6 { svg } => overlay(Body::ellipse(1.0, 0.6)?, Profile::tent(0.0, 1.0, 1.5)?, svg, tol),
        Which::Fuzz { seed, cases, bodies } => fuzz(seed, cases, bodies, tol),
    }
}

fn sheared(beta: f64) -> Result<VDistributedSet<f64>, CliError> {
    let v = Profile::indicator(0.0, 1.0, 2.0)?;
    let b = Profile::affine(0.0, 1.0, 0.0, beta.tan())?;
    Ok(VDistributedSet::new(v, b)?)
}

fn fig2(svg: Option<PathBuf>, tol: Tol<f64>) -> Result<Outcome, CliError> {
    let ks = Body::diamond(1.0);
    let all = Intervals::everything();
    let (l, h) = (1.0, 2.0);
    let mut rows = Vec::new();
    for k in 0..6 {
        let beta = k as f64 * PI / 12.0;
        let s = sheared(beta)?;
        let eq = check_equality_membership(&s, &ks, tol)?;
        rows.push(json!({
            "beta": format!("{k}pi/12"),
            "beta_rad": beta,
            "perimeter": perimeter_from_vb(&s, &ks, &all).total,
            "polygon_oracle": polygon_perimeter(&s.to_polygon_set(), &ks, &all),
            "expected": if 4 * k <= 12 { 2.0 * l + 2.0 * h } else { 4.0 + 2.0 * beta.tan() },
            "equality": eq.all_ok(),
            "gap": eq.gap,
        }));
    }
    let report = json!({ "body": io::body_to_json(&ks), "reference_2l_plus_2h": 2.0 * l + 2.0 * h, "rows": rows });
    let mut o = Outcome::ok(report);
    if let Some(path) = svg {
        let mut plot = Plot::new();
        plot.set(&VDistributedSet::symmetric(Profile::indicator(0.0, 1.0, 2.0)?)?.to_polygon_set(), Style::Symmetral)
            .set(&sheared(PI / 6.0)?.to_polygon_set(), Style::Set)
            .body(&ks.scaled(0.5), Style::Body)
            .label(Point::new(0.0, -1.4), "E (beta = pi/6), F[v] dashed");
        o.svg = Some((path, plot.render()));
    }
    Ok(o)
}

/// Normals of `∂*F[v]` next to those of `K^s`, with the membership tests.
fn overlay(ks: Body, v: Profile, svg: Option<PathBuf>, tol: Tol<f64>) -> Result<Outcome, CliError> {
    let normals = ks.normals_set();
    let mut rows = Vec::new();
    let mut arrows = Vec::new();
    for ((x0, x1), nu) in piece_normals(&v) {
        for n in [nu, nu.flip_q()] {
            rows.push(json!({
                "piece": [x0, x1],
                "normal": io::point_json(n),
                "in_closure": normals.is_in_closure(n, tol.get()),
                "extreme_of_polar": ks.is_extreme_of_polar(n, tol)?,
            }));
            let mid = (x0 + x1) / 2.0;
            let y = v.eval(mid) / 2.0 * n.y.signum();
            arrows.push((Point::new(mid, y), n));
        }
    }
    let r = verdict(&VDistributedSet::symmetric(v.clone())?, &ks, tol)?;
    let report = json!({
        "body": io::body_to_json(&ks),
        "profile": io::profile_to_json(&v),
        "body_normals": normals_json(&normals),
        "set_normals": rows,
        "verdict": match r.verdict { Verdict::Equivalent => "Equivalent", Verdict::NotGuaranteed => "NotGuaranteed" },
    });
    let mut o = Outcome::ok(report);
    if let Some(path) = svg {
        let mut plot = Plot::new();
        plot.set(&VDistributedSet::symmetric(v)?.to_polygon_set(), Style::Symmetral);
        let shift = Point::new(3.0, 0.0);
        let outline = crate::svg::body_outline(&ks).into_iter().map(|p| p + shift).collect();
        plot.outline(outline, Style::Body);
        for (at, n) in arrows {
            plot.arrow(at, n * 0.4, "#c62828");
        }
        if let Some(ns) = normals.finite() {
            let poly = ks.as_polygon().expect("finite normals come from polygons");
            for (i, n) in ns.iter().enumerate() {
                let mid = (poly.vertex(i) + poly.vertex(i + 1)) * 0.5 + shift;
                plot.arrow(mid, *n * 0.4, "#1565c0");
            }
        }
        o.svg = Some((path, plot.render()));
    }
    Ok(o)
}

fn fuzz(seed: u64, cases: usize, bodies: usize, tol: Tol<f64>) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ks: Vec<Body> = (0..bodies).map(|_| random_symmetral(&mut rng)).collect();
    let sets: Vec<VDistributedSet<f64>> = (0..cases).map(|_| random_vset(&mut rng)).collect();
    let all = Intervals::everything();
    let (mut max_err, mut min_gap, mut discrepancies) = (0.0f64, f64::INFINITY, 0usize);
    for k in &ks {
        for s in &sets {
            let total = perimeter_from_vb(s, k, &all).total;
            let oracle = polygon_perimeter(&s.to_polygon_set(), k, &all);
            max_err = max_err.max((total - oracle).abs() / (1.0 + total));
            let gap = steiner_gap(s, k, &all, tol)?;
            min_gap = min_gap.min(gap);
            let eq = check_equality_membership(s, k, tol)?;
            if eq.all_ok() != (gap <= 1e-8) {
                discrepancies += 1;
            }
        }
    }
    let pass = max_err <= 1e-8 && min_gap >= -1e-9 && discrepancies == 0;
    let report: Value = json!({
        "seed": seed,
        "cases": cases,
        "bodies": bodies,
        "max_relative_oracle_error": max_err,
        "min_steiner_gap": if min_gap.is_finite() { json!(min_gap) } else { Value::Null },
        "equality_discrepancies": discrepancies,
        "pass": pass,
    });
    Ok(Outcome { report, code: if pass { 0 } else { 1 }, svg: None })
}
