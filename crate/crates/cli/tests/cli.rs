use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const SQUARE: &str = r#"{"kind":"polytope","vertices":[[-1,-1],[1,-1],[1,1],[-1,1]]}"#;
const DIAMOND: &str = r#"{"kind":"polytope","vertices":[[1,0],[0,1],[-1,0],[0,-1]]}"#;
const TRIANGLE: &str = r#"{"kind":"polytope","vertices":[[-1,-1],[2,-0.5],[-0.5,1.5]]}"#;
const CONST2: &str = r#"{"nodes":[0,1],"values_left":[0,2],"values_right":[2,0]}"#;
const ZERO: &str = r#"{"nodes":[],"values_left":[],"values_right":[]}"#;
const SQUARE_SET: &str = r#"{"loops":[[[-1,-1],[1,-1],[1,1],[-1,1]]]}"#;
const MEASURE: &str = r#"{"atoms":[{"at":0.25,"vector":[1,0]},{"at":0.75,"vector":[0,-2]}]}"#;

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn aniso(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aniso"))
        .args(args.iter().map(|a| a.as_ref()))
        .env_remove("ANISO_TOL")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn p(path: &Path) -> &std::ffi::OsStr {
    path.as_os_str()
}

#[test]
fn square_set_has_perimeter_eight() {
    let d = Dir::new();
    let (k, e) = (d.file("k.json", SQUARE), d.file("e.json", SQUARE_SET));
    let out = aniso(&[&"perimeter", &"--body", &p(&k), &"--set", &p(&e)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["total"], 8.0);
    assert_eq!(r["polygon_oracle"], 8.0);
    assert_eq!(r["sections_are_segments"], true);
}

#[test]
fn profiles_and_strip() {
    let d = Dir::new();
    let (k, v, b) = (d.file("k.json", SQUARE), d.file("v.json", CONST2), d.file("b.json", ZERO));
    let r = json(&aniso(&[&"perimeter", &"--body", &p(&k), &"--set", &p(&v), &p(&b)]));
    assert_eq!(r["total"], 6.0);
    let r = json(&aniso(&[&"perimeter", &"--body", &p(&k), &"--set", &p(&v), &p(&b), &"--strip", &"-1,0.5"]));
    assert_eq!(r["total"], 3.0);
}

#[test]
fn rigidity_exit_codes() {
    let d = Dir::new();
    let v = d.file("v.json", CONST2);
    let diamond = aniso(&[&"rigidity", &"--body", &p(&d.file("k.json", DIAMOND)), &"--profile", &p(&v)]);
    assert_eq!(diamond.status.code(), Some(2));
    let r = json(&diamond);
    assert_eq!(r["verdict"], "NotGuaranteed");
    assert!(r["witness"].is_object());

    let square = aniso(&[&"rigidity", &"--body", &p(&d.file("s.json", SQUARE)), &"--profile", &p(&v)]);
    assert_eq!(square.status.code(), Some(0));
    assert_eq!(json(&square)["verdict"], "Equivalent");
}

#[test]
fn steiner_preserves_area_and_writes_svg() {
    let d = Dir::new();
    let svg = d.path("s.svg");
    let r = json(&aniso(&[&"steiner", &"--body", &p(&d.file("t.json", TRIANGLE)), &"--svg", &p(&svg)]));
    let (a, s) = (r["area"]["input"].as_f64().unwrap(), r["area"]["symmetral"].as_f64().unwrap());
    assert!((a - s).abs() < 1e-9);
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
}

#[test]
fn malformed_input_exits_three() {
    let d = Dir::new();
    let bad = d.file("bad.json", "{\"kind\": \"polytope\",\n \"vertices\": [[0,0],]}");
    let out = aniso(&[&"body", &"--body", &p(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.json") && err.contains("line 2"), "{err}");

    let off = d.file("off.json", r#"{"kind":"polytope","vertices":[[2,0],[3,0],[3,1]]}"#);
    assert_eq!(aniso(&[&"body", &"--body", &p(&off)]).status.code(), Some(3));
    assert_eq!(aniso(&[&"body", &"--body", &p(&d.path("missing.json"))]).status.code(), Some(3));
    assert_eq!(aniso(&[&"perimeter", &"--body"]).status.code(), Some(3));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let d = Dir::new();
    let (k, v) = (d.file("k.json", DIAMOND), d.file("v.json", CONST2));
    let a = aniso(&[&"rigidity", &"--body", &p(&k), &"--profile", &p(&v)]);
    let b = aniso(&[&"rigidity", &"--body", &p(&k), &"--profile", &p(&v)]);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.ends_with(b"\n"));
}

#[test]
fn emitted_bodies_reload() {
    let d = Dir::new();
    let r = json(&aniso(&[&"steiner", &"--body", &p(&d.file("t.json", TRIANGLE))]));
    let sym = d.file("sym.json", &r["symmetral"].to_string());
    let again = json(&aniso(&[&"steiner", &"--body", &p(&sym)]));
    assert_eq!(again["symmetral"], r["symmetral"]);

    let body = json(&aniso(&[&"body", &"--body", &p(&d.file("e.json", r#"{"kind":"ellipse","a":2,"b":1}"#))]));
    assert_eq!(body["polar"], serde_json::json!({"kind": "ellipse", "a": 0.5, "b": 1.0}));
    let polar = d.file("polar.json", &body["polar"].to_string());
    assert_eq!(json(&aniso(&[&"body", &"--body", &p(&polar)]))["polar"]["a"], 2.0);
}

#[test]
fn tolerance_from_environment() {
    let d = Dir::new();
    let k = d.file("k.json", SQUARE);
    let run = |tol: &str| {
        Command::new(env!("CARGO_BIN_EXE_aniso"))
            .args(["body", "--body"])
            .arg(&k)
            .env("ANISO_TOL", tol)
            .output()
            .unwrap()
    };
    assert_eq!(run("1e-6").status.code(), Some(0));
    assert_eq!(run("abc").status.code(), Some(3));
    assert_eq!(run("-1").status.code(), Some(3));
    assert_eq!(aniso(&[&"--tol", &"0", &"body", &"--body", &p(&k)]).status.code(), Some(3));
}

#[test]
fn body_query_and_text_format() {
    let d = Dir::new();
    let k = d.file("k.json", SQUARE);
    let r = json(&aniso(&[&"body", &"--body", &p(&k), &"--query", &"-1,0.5"]));
    assert_eq!(r["support"], 1.5);
    assert_eq!(r["gauge"], 1.0);
    let out = aniso(&[&"--format", &"text", &"body", &"--body", &p(&k)]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("area = 4.0\n"));

    let cube = d.file("c.json", r#"{"kind":"polytope","vertices":[[1,1,1],[1,1,-1],[1,-1,1],[1,-1,-1],[-1,1,1],[-1,1,-1],[-1,-1,1],[-1,-1,-1]]}"#);
    let r = json(&aniso(&[&"body", &"--body", &p(&cube), &"--query", &"1,2,-3"]));
    assert_eq!(r["dim"], 3);
    assert_eq!(r["support"], 6.0);
    assert_eq!(r["gauge"], 3.0);
}

#[test]
fn tvk_reports_oracles() {
    let d = Dir::new();
    let (k, m) = (d.file("k.json", SQUARE), d.file("m.json", MEASURE));
    let r = json(&aniso(&[&"tvk", &"--body", &p(&k), &"--measure", &p(&m), &"--strip", &"0,1"]));
    assert_eq!(r["total_variation"], 3.0);
    assert_eq!(r["anisotropic_total_variation"], 3.0);
    assert_eq!(r["dual_test_value"], 3.0);
    assert_eq!(r["separated_oracle"], 3.0);
    assert_eq!(r["separating_depth"], 1);
}

#[test]
fn output_flag_writes_file() {
    let d = Dir::new();
    let out = d.path("r.json");
    let run = aniso(&[&"-o", &p(&out), &"body", &"--body", &p(&d.file("k.json", SQUARE))]);
    assert!(run.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(r["area"], 4.0);
}

#[test]
fn repro_examples() {
    let r = json(&aniso(&[&"repro", &"fig2"]));
    for row in r["rows"].as_array().unwrap() {
        let (got, want) = (row["perimeter"].as_f64().unwrap(), row["expected"].as_f64().unwrap());
        assert!((got - want).abs() < 1e-9, "{row}");
        assert!((got - row["polygon_oracle"].as_f64().unwrap()).abs() < 1e-9);
    }
    assert_eq!(json(&aniso(&[&"repro", &"fig5"]))["verdict"], "Equivalent");
    assert_eq!(json(&aniso(&[&"repro", &"fig6"]))["verdict"], "Equivalent");

    let fuzz = aniso(&[&"repro", &"fuzz", &"--seed", &"3", &"--cases", &"40", &"--bodies", &"4"]);
    assert_eq!(fuzz.status.code(), Some(0));
    assert_eq!(json(&fuzz)["pass"], true);
}
