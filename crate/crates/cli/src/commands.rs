use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use aniso_core::io::{self, LoadedBody};
use aniso_core::perimeter::{perimeter_from_vb, polygon_perimeter, VDistributedSet};
use aniso_core::rigidity::{verdict, Verdict};
use aniso_core::steiner::{steiner_symmetrize, SectionWidth};
use aniso_core::{Body, Intervals, NormalSet, Point, Profile, Tol};

use crate::svg::{Plot, Style};
use crate::{CliError, Command, Outcome};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

/// Tags a library error with the file it came from.
fn load<T>(path: &Path, f: impl FnOnce(&str) -> aniso_core::Result<T>) -> Result<T, CliError> {
    f(&read(path)?).map_err(|source| CliError::Input { path: path.to_path_buf(), source })
}

fn load_planar(path: &Path, tol: Tol<f64>) -> Result<Body, CliError> {
    load(path, |s| io::parse_body(s, tol)?.planar())
}

fn strip(s: Option<(f64, f64)>) -> Result<Intervals, CliError> {
    Ok(match s {
        Some((a, b)) => Intervals::interval(a, b)?,
        None => Intervals::everything(),
    })
}

pub fn normals_json(n: &NormalSet<f64>) -> Value {
    match n {
        NormalSet::Finite(v) => Value::Array(v.iter().map(|&p| io::point_json(p)).collect()),
        NormalSet::FullSphere => json!("full-sphere"),
    }
}

fn with_svg(mut o: Outcome, path: Option<PathBuf>, plot: impl FnOnce() -> Plot) -> Outcome {
    o.svg = path.map(|p| (p, plot().render()));
    o
}

pub fn dispatch(cmd: Command, tol: Tol<f64>) -> Result<Outcome, CliError> {
    match cmd {
        Command::Body { body, query, svg } => body_cmd(&body, query.map(|c| c.0), svg, tol),
        Command::Steiner { body, svg } => steiner_cmd(&body, svg, tol),
        Command::Perimeter { body, set, strip: s, svg } => perimeter_cmd(&body, &set, strip(s)?, svg, tol),
        Command::Rigidity { body, profile, barycenter, svg } => {
            rigidity_cmd(&body, &profile, barycenter.as_deref(), svg, tol)
        }
        Command::Tvk { body, measure, strip: s, depth } => tvk_cmd(&body, &measure, strip(s)?, depth, tol),
        Command::Repro { which } => crate::repro::run(which, tol),
    }
}

fn body_cmd(path: &Path, query: Option<Vec<f64>>, svg: Option<PathBuf>, tol: Tol<f64>) -> Result<Outcome, CliError> {
    match load(path, |s| io::parse_body(s, tol))? {
        LoadedBody::Polytope(p) => {
            let mut report = json!({
                "dim": p.dim(),
                "vertices": p.vertices(),
                "facets": p.facets(),
            });
            if let Some(x) = query {
                if x.len() != p.dim() {
                    return Err(CliError::Usage(format!("query has {} coordinates, body has {}", x.len(), p.dim())));
                }
                report["support"] = json!(p.support(&x));
                report["gauge"] = json!(p.gauge(&x));
            }
            Ok(Outcome::ok(report))
        }
        LoadedBody::Planar(k) => {
            let (c, cap) = k.coercivity();
            let mut report = json!({
                "body": io::body_to_json(&k),
                "polar": io::body_to_json(&k.polar()),
                "area": k.area(),
                "diameter": k.diameter(),
                "coercivity": [c, cap],
                "normals": normals_json(&k.normals_set()),
            });
            if let Some(x) = query {
                let &[x, y] = x.as_slice() else {
                    return Err(CliError::Usage("query for a planar body must be `x,y`".into()));
                };
                let q = Point::new(x, y);
                report["support"] = json!(k.support(q));
                report["gauge"] = json!(k.gauge(q));
            }
            Ok(with_svg(Outcome::ok(report), svg, || {
                let mut plot = Plot::new();
                plot.body(&k, Style::Body).body(&k.polar(), Style::Symmetral);
                if let NormalSet::Finite(ns) = k.normals_set() {
                    let poly = k.as_polygon().expect("finite normals come from polygons");
                    for (i, n) in ns.iter().enumerate() {
                        let mid = (poly.vertex(i) + poly.vertex(i + 1)) * 0.5;
                        plot.arrow(mid, *n * 0.25, "#c62828");
                    }
                }
                plot
            }))
        }
    }
}

fn steiner_cmd(path: &Path, svg: Option<PathBuf>, tol: Tol<f64>) -> Result<Outcome, CliError> {
    let k = load_planar(path, tol)?;
    let r = steiner_symmetrize(&k)?;
    let width = match &r.section_width {
        SectionWidth::Profile(v) => io::profile_to_json(v),
        SectionWidth::Ellipse(e) => json!({ "ellipse": [e.a, e.b] }),
    };
    let report = json!({
        "symmetral": io::body_to_json(&r.body),
        "area": { "input": k.area(), "symmetral": r.body.area() },
        "section_width": width,
    });
    Ok(with_svg(Outcome::ok(report), svg, || {
        let mut plot = Plot::new();
        plot.body(&k, Style::Body).body(&r.body, Style::Symmetral);
        plot
    }))
}

fn perimeter_cmd(
    body: &Path,
    set: &[PathBuf],
    b_set: Intervals,
    svg: Option<PathBuf>,
    tol: Tol<f64>,
) -> Result<Outcome, CliError> {
    let k = load_planar(body, tol)?;
    let (polygons, vset) = match set {
        [one] => {
            let e = load(one, io::parse_polygon_set)?;
            let s = VDistributedSet::from_polygon(&e).ok();
            (e, s)
        }
        [v, b] => {
            let v = load(v, |s| io::parse_profile(s, tol))?;
            let b = load(b, |s| io::parse_profile(s, tol))?;
            let s = VDistributedSet::new(v, b)?;
            (s.to_polygon_set(), Some(s))
        }
        _ => return Err(CliError::Usage("--set takes one polygon file or two profile files".into())),
    };
    let oracle = polygon_perimeter(&polygons, &k, &b_set);
    let breakdown = vset.as_ref().map(|s| perimeter_from_vb(s, &k, &b_set));
    let report = json!({
        "total": breakdown.map_or(oracle, |b| b.total),
        "polygon_oracle": oracle,
        "breakdown": breakdown.as_ref().map(io::breakdown_to_json),
        "sections_are_segments": vset.is_some(),
    });
    Ok(with_svg(Outcome::ok(report), svg, || {
        let mut plot = Plot::new();
        plot.set(&polygons, Style::Set);
        if let Some(s) = &vset {
            if let Ok(f) = VDistributedSet::symmetric(s.v().clone()) {
                plot.set(&f.to_polygon_set(), Style::Symmetral);
            }
        }
        plot.body(&k, Style::Body);
        plot
    }))
}

fn rigidity_cmd(
    body: &Path,
    profile: &Path,
    barycenter: Option<&Path>,
    svg: Option<PathBuf>,
    tol: Tol<f64>,
) -> Result<Outcome, CliError> {
    let k = load_planar(body, tol)?;
    let v = load(profile, |s| io::parse_profile(s, tol))?;
    let b = match barycenter {
        Some(p) => load(p, |s| io::parse_profile(s, tol))?,
        None => Profile::zero(),
    };
    let s = VDistributedSet::new(v, b)?;
    let r = verdict(&s, &k, tol)?;
    let code = match r.verdict {
        Verdict::Equivalent => 0,
        Verdict::NotGuaranteed => 2,
    };
    let mut outcome = Outcome { report: io::report_to_json(&r), code, svg: None };
    outcome = with_svg(outcome, svg, || {
        let mut plot = Plot::new();
        if let Ok(f) = VDistributedSet::symmetric(s.v().clone()) {
            plot.set(&f.to_polygon_set(), Style::Symmetral);
        }
        if let Some(w) = &r.witness {
            plot.set(&w.to_polygon_set(), Style::Set);
        }
        for n in &r.failing_normals {
            plot.arrow(Point::zero(), *n * 0.5, "#c62828");
        }
        plot
    });
    Ok(outcome)
}

fn tvk_cmd(body: &Path, measure: &Path, g: Intervals, depth: u32, tol: Tol<f64>) -> Result<Outcome, CliError> {
    let k = load_planar(body, tol)?;
    let mu = load(measure, io::parse_measure)?;
    let sep = mu.separating_depth(&g);
    let report = json!({
        "total_variation": mu.total_variation(&g),
        "anisotropic_total_variation": mu.anisotropic_total_variation(&k, &g),
        "partition_oracle": { "depth": depth, "value": mu.sup_partition_oracle(&k, &g, depth) },
        "separating_depth": sep,
        "separated_oracle": sep.map(|d| mu.sup_partition_oracle(&k, &g, d)),
        "dual_test_value": mu.dual_test_value(&k, &g, tol),
    });
    Ok(Outcome::ok(report))
}
