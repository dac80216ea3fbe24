//! JSON formats for bodies, profiles, measures, polygon sets and reports.
//!
//! Emitted numbers are rounded to 12 significant digits and object keys are
//! sorted, so identical inputs give byte-identical output.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::body::{ConvexBody, Polytope};
use crate::error::{Error, Result};
use crate::measure::{Atom, Density, DiscreteVectorMeasure};
use crate::perimeter::{PerimeterBreakdown, PolygonSet, VDistributedSet};
use crate::rigidity::{RigidityReport, Verdict};
use crate::sbv1d::SbvProfile;
use crate::scalar::Tol;
use crate::vec2::Vec2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BodySpec {
    Polytope { vertices: Vec<Vec<f64>> },
    Ellipse { a: f64, b: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoadedBody {
    Planar(ConvexBody<f64>),
    Polytope(Polytope<f64>),
}

impl LoadedBody {
    pub fn planar(self) -> Result<ConvexBody<f64>> {
        match self {
            LoadedBody::Planar(k) => Ok(k),
            LoadedBody::Polytope(p) => Err(Error::DimensionUnsupported { dim: p.dim() }),
        }
    }
}

impl BodySpec {
    pub fn build(&self, tol: Tol<f64>) -> Result<LoadedBody> {
        match self {
            BodySpec::Ellipse { a, b } => Ok(LoadedBody::Planar(ConvexBody::ellipse(*a, *b)?)),
            BodySpec::Polytope { vertices } => match vertices.first().map(Vec::len) {
                Some(2) if vertices.iter().all(|v| v.len() == 2) => {
                    let pts: Vec<Vec2<f64>> = vertices.iter().map(|v| Vec2::new(v[0], v[1])).collect();
                    Ok(LoadedBody::Planar(ConvexBody::polygon_with_tol(&pts, tol)?))
                }
                _ => Ok(LoadedBody::Polytope(Polytope::new(vertices.clone(), tol)?)),
            },
        }
    }
}

/// Flat mirror of [`BodySpec`]; parse errors keep their line and column.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBody {
    kind: String,
    vertices: Option<Vec<Vec<f64>>>,
    a: Option<f64>,
    b: Option<f64>,
}

pub fn parse_body(text: &str, tol: Tol<f64>) -> Result<LoadedBody> {
    let raw: RawBody = serde_json::from_str(text)?;
    let missing = |field: &str| Error::InvalidBody(format!("{} body is missing field `{field}`", raw.kind));
    let spec = match raw.kind.as_str() {
        "polytope" => BodySpec::Polytope { vertices: raw.vertices.clone().ok_or_else(|| missing("vertices"))? },
        "ellipse" => BodySpec::Ellipse { a: raw.a.ok_or_else(|| missing("a"))?, b: raw.b.ok_or_else(|| missing("b"))? },
        other => return Err(Error::InvalidBody(format!("unknown kind `{other}`, expected `polytope` or `ellipse`"))),
    };
    spec.build(tol)
}

pub fn body_to_json(k: &ConvexBody<f64>) -> Value {
    let spec = match k {
        ConvexBody::Polygon(p) => {
            BodySpec::Polytope { vertices: p.vertices().iter().map(|v| vec![v.x, v.y]).collect() }
        }
        ConvexBody::Ellipse(e) => BodySpec::Ellipse { a: e.a, b: e.b },
    };
    serde_json::to_value(spec).expect("serializable")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpec {
    pub nodes: Vec<f64>,
    pub values_left: Vec<f64>,
    pub values_right: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slopes: Option<Vec<f64>>,
}

impl ProfileSpec {
    pub fn build(&self, tol: Tol<f64>) -> Result<SbvProfile<f64>> {
        let (n, l, r) = (self.nodes.clone(), self.values_left.clone(), self.values_right.clone());
        match &self.slopes {
            Some(s) => SbvProfile::with_slopes(n, l, r, s, tol.get()),
            None => SbvProfile::new(n, l, r),
        }
    }
}

pub fn parse_profile(text: &str, tol: Tol<f64>) -> Result<SbvProfile<f64>> {
    serde_json::from_str::<ProfileSpec>(text)?.build(tol)
}

pub fn profile_to_json(v: &SbvProfile<f64>) -> Value {
    serde_json::to_value(ProfileSpec {
        nodes: v.nodes().to_vec(),
        values_left: v.left_limits().to_vec(),
        values_right: v.right_limits().to_vec(),
        slopes: Some(v.slopes()),
    })
    .expect("serializable")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomSpec {
    at: f64,
    vector: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DensitySpec {
    interval: [f64; 2],
    vector: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureSpec {
    #[serde(default)]
    atoms: Vec<AtomSpec>,
    #[serde(default)]
    densities: Vec<DensitySpec>,
}

pub fn parse_measure(text: &str) -> Result<DiscreteVectorMeasure<f64>> {
    let spec: MeasureSpec = serde_json::from_str(text)?;
    DiscreteVectorMeasure::new(
        spec.atoms.iter().map(|a| Atom { at: a.at, vector: Vec2::new(a.vector[0], a.vector[1]) }).collect(),
        spec.densities
            .iter()
            .map(|d| Density { lo: d.interval[0], hi: d.interval[1], vector: Vec2::new(d.vector[0], d.vector[1]) })
            .collect(),
    )
}

pub fn measure_to_json(m: &DiscreteVectorMeasure<f64>) -> Value {
    serde_json::to_value(MeasureSpec {
        atoms: m.atoms().iter().map(|a| AtomSpec { at: a.at, vector: [a.vector.x, a.vector.y] }).collect(),
        densities: m
            .densities()
            .iter()
            .map(|d| DensitySpec { interval: [d.lo, d.hi], vector: [d.vector.x, d.vector.y] })
            .collect(),
    })
    .expect("serializable")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonSetSpec {
    loops: Vec<Vec<[f64; 2]>>,
}

pub fn parse_polygon_set(text: &str) -> Result<PolygonSet<f64>> {
    let spec: PolygonSetSpec = serde_json::from_str(text)?;
    PolygonSet::new(spec.loops.iter().map(|l| l.iter().map(|p| Vec2::new(p[0], p[1])).collect()).collect())
}

pub fn polygon_set_to_json(e: &PolygonSet<f64>) -> Value {
    let loops: Vec<Vec<[f64; 2]>> = e.loops().iter().map(|l| l.iter().map(|p| [p.x, p.y]).collect()).collect();
    serde_json::to_value(PolygonSetSpec { loops }).expect("serializable")
}

pub fn point_json(p: Vec2<f64>) -> Value {
    json!([p.x, p.y])
}

pub fn vset_to_json(s: &VDistributedSet<f64>) -> Value {
    json!({ "v": profile_to_json(s.v()), "b": profile_to_json(s.b()) })
}

pub fn breakdown_to_json(p: &PerimeterBreakdown<f64>) -> Value {
    serde_json::to_value(p).expect("serializable")
}

pub fn report_to_json(r: &RigidityReport<f64>) -> Value {
    let e = &r.equality;
    json!({
        "condition_sections_ok": e.sections_ok,
        "condition_cone_ok": e.cone_ok,
        "cone_failures": e.cone_failures,
        "condition_jump_ok": e.jump_ok,
        "jump_failures": e.jump_failures,
        "cantor_condition": e.cantor_condition,
        "steiner_gap": e.gap,
        "r1_ok": r.r1_ok,
        "r2_ok": r.r2_ok,
        "r2_reason": r.r2_reason,
        "failing_normals": r.failing_normals.iter().map(|&n| point_json(n)).collect::<Vec<_>>(),
        "verdict": match r.verdict {
            Verdict::Equivalent => "Equivalent",
            Verdict::NotGuaranteed => "NotGuaranteed",
        },
        "witness": r.witness.as_ref().map(vset_to_json),
    })
}

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("float");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Applies [`round12`] to every number and sorts object keys.
pub fn canonicalize(v: &Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if !n.is_i64() && !n.is_u64() => {
                let r = round12(x);
                serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
            }
            _ => v.clone(),
        },
        Value::Array(a) => Value::Array(a.iter().map(canonicalize).collect()),
        Value::Object(o) => {
            let mut keys: Vec<&String> = o.keys().collect();
            keys.sort();
            let mut m = Map::new();
            for k in keys {
                m.insert(k.clone(), canonicalize(&o[k]));
            }
            Value::Object(m)
        }
        _ => v.clone(),
    }
}

/// Pretty-printed canonical JSON with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&canonicalize(v)).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn body_formats() {
        let tol = Tol::default();
        let k =
            parse_body(r#"{"kind":"polytope","vertices":[[1,0],[0,1],[-1,0],[0,-1]]}"#, tol).unwrap().planar().unwrap();
        assert_eq!(k, ConvexBody::diamond(1.0));
        let e = parse_body(r#"{"kind":"ellipse","a":2,"b":1}"#, tol).unwrap().planar().unwrap();
        assert_eq!(e, ConvexBody::ellipse(2.0, 1.0).unwrap());
        let back = parse_body(&to_canonical_string(&body_to_json(&k)), tol).unwrap().planar().unwrap();
        assert_eq!(back, k);
        let cube = r#"{"kind":"polytope","vertices":[[1,1,1],[1,1,-1],[1,-1,1],[1,-1,-1],[-1,1,1],[-1,1,-1],[-1,-1,1],[-1,-1,-1]]}"#;
        assert!(matches!(parse_body(cube, tol).unwrap(), LoadedBody::Polytope(_)));
    }

    #[test]
    fn malformed_inputs_report_location() {
        let tol = Tol::default();
        let err = parse_body("{\"kind\":\"ellipse\",\n\"a\":\"x\"}", tol).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_body(r#"{"kind":"ellipse","a":1}"#, tol).unwrap_err();
        assert!(err.to_string().contains("`b`"), "{err}");
        assert!(parse_body(r#"{"kind":"ellipse","a":1,"b":1,"c":2}"#, tol).is_err());
        assert!(matches!(
            parse_body(r#"{"kind":"polytope","vertices":[[2,0],[3,0],[3,1]]}"#, tol),
            Err(Error::OriginNotInterior)
        ));
        let err = parse_profile(r#"{"nodes":[0,1],"values_left":[0,1],"values_right":[1,0],"slopes":[5]}"#, tol);
        assert!(matches!(err, Err(Error::InvalidProfile(_))));
    }

    #[test]
    fn profile_and_measure_round_trip() {
        let tol = Tol::default();
        let v = SbvProfile::new(vec![0.0, 0.5, 1.0], vec![0.0, 4.0, 2.0], vec![4.0, 2.0, 0.0]).unwrap();
        let text = to_canonical_string(&profile_to_json(&v));
        assert_eq!(parse_profile(&text, tol).unwrap(), v);
        let m = parse_measure(r#"{"atoms":[{"at":0,"vector":[1,0]}],"densities":[{"interval":[1,2],"vector":[0,1]}]}"#)
            .unwrap();
        assert_eq!(parse_measure(&to_canonical_string(&measure_to_json(&m))).unwrap(), m);
        let e = parse_polygon_set(r#"{"loops":[[[0,0],[1,0],[1,1],[0,1]]]}"#).unwrap();
        assert_eq!(parse_polygon_set(&to_canonical_string(&polygon_set_to_json(&e))).unwrap(), e);
    }

    #[test]
    fn rounding_is_stable() {
        assert_eq!(round12(0.1 + 0.2), 0.3);
        assert_eq!(round12(-0.0), 0.0);
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
        let v = json!({"b": 1.0000000000001, "a": [2.0, 1]});
        assert_eq!(to_canonical_string(&v), "{\n  \"a\": [\n    2.0,\n    1\n  ],\n  \"b\": 1.0\n}\n");
    }
}
