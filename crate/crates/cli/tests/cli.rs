use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn kahler(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kahler")).args(args).current_dir(dir).output().unwrap()
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn ok_json(args: &[&str], dir: &Path) -> Value {
    let out = kahler(args, dir);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn int(v: i64) -> Value {
    json!({ "num": v, "den": 1 })
}

fn frac(n: i64, d: i64) -> Value {
    json!({ "num": n, "den": d })
}

fn fixtures() -> TempDir {
    let dir = TempDir::new().unwrap();
    write(&dir, "disc-dT.json", &json!({ "l": 1, "m": 1, "entries": [{ "index": [[1]], "coeff": "t1" }] }));
    write(&dir, "const.json", &json!({ "l": 2, "m": 1, "entries": [{ "index": [[1, 2]], "coeff": "1" }] }));
    write(&dir, "diag.json", &json!({ "rows": 2, "cols": 2, "entries": ["4", "0", "0", "6"] }));
    write(&dir, "chart.json", &json!({ "substitutions": ["s1^2*s2", "3*s2"] }));
    write(
        &dir,
        "f1.json",
        &json!({ "l": 1, "m": 1, "entries": [{ "index": [[1]], "coeff": "t1 + pi^3*t1^-1" }] }),
    );
    write(
        &dir,
        "interval.json",
        &json!({ "n": 1, "constraints": [{ "a": [1], "b": "5/2" }, { "a": [-1], "b": 0 }] }),
    );
    dir
}

#[test]
fn eval_norm_of_dt_is_the_radius() {
    let dir = fixtures();
    let v = ok_json(&["eval-norm", "--field", "piadic-q", "--n", "1", "--point", "1", "--form", "disc-dT.json"], dir.path());
    assert_eq!(v["value"], int(1));
    assert_eq!(v["certificate"], "tame");
    for (r, want) in [("0", int(0)), ("3/2", frac(3, 2)), ("-2", int(-2))] {
        let v = ok_json(&["eval-norm", "--field", "piadic-q", "--point", r, "--form", "disc-dT.json"], dir.path());
        assert_eq!(v["value"], want);
    }
}

#[test]
fn eval_norm_through_a_chart() {
    let dir = fixtures();
    let v = ok_json(
        &["eval-norm", "--field", "padic:3", "--point", "1,1/2", "--form", "disc-dT.json", "--chart", "chart.json"],
        dir.path(),
    );
    // dt1 = t1 · dlog t1, and v(t1) = 5/2 at this point of the chart
    assert_eq!(v["value"], frac(5, 2));
}

#[test]
fn constant_form_attains_its_minimum_everywhere() {
    let dir = fixtures();
    let v = ok_json(&["max-locus", "--field", "piadic-q", "--semistable", "2,2", "--form", "const.json"], dir.path());
    assert_eq!(v["m_star"], int(0));
    let faces = v["faces"].as_array().unwrap();
    assert_eq!(faces.len(), 1);
    assert_eq!(faces[0]["tight"], json!([]));
    assert_eq!(
        faces[0]["vertices"],
        json!([[int(0), int(0)], [int(0), int(2)], [int(2), int(0)]])
    );
}

#[test]
fn max_locus_over_a_polytope_file() {
    let dir = fixtures();
    let v = ok_json(&["max-locus", "--field", "piadic-q", "--polytope", "interval.json", "--form", "f1.json"], dir.path());
    assert_eq!(v, json!({ "m_star": int(0), "faces": [{ "tight": [2], "vertices": [[int(0)]] }] }));
}

#[test]
fn weight_compare_examples() {
    let dir = fixtures();
    let v = ok_json(&["weight-compare", "--field", "padic:3", "--n", "1", "--kummer", "1:2", "--m", "1"], dir.path());
    assert_eq!(v, json!({ "wt": int(1), "omega": int(0), "delta_log": int(0), "holds": true }));
    let v = ok_json(&["weight-compare", "--field", "padic:2", "--n", "1", "--kummer", "1:2"], dir.path());
    assert_eq!(v, json!({ "wt": int(2), "omega": int(1), "delta_log": int(0), "holds": true }));
    let v = ok_json(&["weight-compare", "--field", "piadic-q", "--n", "1", "--kummer", "1:2", "--m", "3"], dir.path());
    assert_eq!((&v["wt"], &v["omega"], &v["holds"]), (&int(3), &int(0), &json!(true)));
    let v = ok_json(
        &["weight-compare", "--field", "padic:5", "--n", "2", "--kummer", "2:3", "--m", "2", "--g", "s2 + 5*t1"],
        dir.path(),
    );
    assert_eq!(v["holds"], true);
}

#[test]
fn lattice_subcommands() {
    let dir = fixtures();
    let v = ok_json(&["smith", "--field", "padic:2", "--matrix", "diag.json"], dir.path());
    assert_eq!(v, json!({ "divisors": [int(1), int(2)], "free_rank": 0 }));
    let v = ok_json(&["content", "--field", "padic:3", "--matrix", "diag.json"], dir.path());
    assert_eq!(v, json!({ "content": int(1) }));
    let v = ok_json(&["adic", "--field", "padic:2", "--matrix", "diag.json", "--coords", "2,-1/3"], dir.path());
    assert_eq!(v, json!({ "norm": int(0) }));
    let v = ok_json(&["adic", "--field", "padic:2", "--matrix", "diag.json", "--coords", "2,4"], dir.path());
    assert_eq!(v, json!({ "norm": "inf" }));

    write(&dir, "poly.json", &json!({ "rows": 1, "cols": 1, "entries": ["t1^2 + 3"] }));
    let v = ok_json(&["smith", "--field", "padic:3", "--point", "1", "--matrix", "poly.json"], dir.path());
    assert_eq!(v["divisors"], json!([int(1)]));

    let lat = json!({ "rows": 1, "cols": 1, "entries": ["1"] });
    let sub = json!({ "rows": 1, "cols": 1, "entries": ["9"] });
    write(&dir, "index.json", &json!({ "lattice": lat, "sublattice": sub }));
    let v = ok_json(&["index", "--field", "padic:3", "--index", "index.json"], dir.path());
    assert_eq!(v, json!({ "index": int(-2) }));
}

#[test]
fn chart_subcommands() {
    let dir = fixtures();
    let v = ok_json(&["retract", "--field", "padic:3", "--point", "1,1/2", "--chart", "chart.json"], dir.path());
    assert_eq!(v, json!({ "retraction": [frac(5, 2), frac(3, 2)] }));
    let v = ok_json(&["tame-check", "--field", "padic:3", "--n", "2", "--chart", "chart.json"], dir.path());
    assert_eq!(v, json!({ "certificate": "tame" }));
    let v = ok_json(&["tame-check", "--field", "padic:2", "--n", "2", "--chart", "chart.json"], dir.path());
    assert_eq!(v, json!({ "certificate": "wild" }));
}

#[test]
fn trop_terms_and_value() {
    let dir = fixtures();
    let v = ok_json(&["trop", "--field", "piadic-q", "--point", "2", "--form", "f1.json", "--epsilon", "0.5"], dir.path());
    assert_eq!(
        v["terms"],
        json!([{ "c": int(3), "slope": [-1] }, { "c": int(0), "slope": [1] }])
    );
    assert_eq!(v["value"], json!({ "num": 1, "den": 1, "approx": 0.5 }));
    let v = ok_json(&["trop", "--field", "piadic-q", "--n", "1", "--form", "f1.json"], dir.path());
    assert!(v.get("value").is_none());
}

#[test]
fn grid_csv() {
    let dir = fixtures();
    let out = kahler(&["grid", "--field", "piadic-q", "--polytope", "interval.json", "--form", "f1.json", "--grid", "5"], dir.path());
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "r1,value\n0,0\n1/2,1/2\n1,1\n3/2,3/2\n2,1\n5/2,1/2\n"
    );
    let out = kahler(
        &["grid", "--field", "piadic-q", "--semistable", "2,2", "--form", "const.json", "--grid", "1", "--epsilon", "0.25"],
        dir.path(),
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("r1,r2,value,approx"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",0,1")));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = fixtures();
    write(&dir, "bad.json", &json!({ "l": 1, "m": 1, "entries": [{ "index": [[1]], "coeff": "t1 +\n * 2" }] }));
    let out = kahler(&["trop", "--field", "piadic-q", "--n", "1", "--form", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("entries[0].coeff: line 2, column 2"), "{err}");

    std::fs::write(dir.path().join("broken.json"), "{\"rows\": 2,\n \"cols\": }").unwrap();
    let out = kahler(&["smith", "--field", "padic:3", "--matrix", "broken.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2, column"));

    let out = kahler(&["weight-compare", "--field", "padic:3", "--n", "1", "--kummer", "1:2", "--g", "pi"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = kahler(&["eval-norm", "--field", "piadic-q", "--point", "1/0", "--form", "disc-dT.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let dir = fixtures();
    for args in [
        &["frobnicate"][..],
        &["smith", "--field", "padic:3"],
        &["smith", "--field", "padix:3", "--matrix", "diag.json"],
        &["smith", "--field", "padic:3", "--matrix", "missing.json"],
        &["max-locus", "--field", "piadic-q", "--n", "2", "--form", "const.json"],
        &["weight-compare", "--field", "padic:3", "--n", "1", "--kummer", "0:2"],
        &["trop", "--field", "piadic-q", "--n", "1", "--form", "f1.json", "--epsilon", "2"],
    ] {
        assert_eq!(kahler(args, dir.path()).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn domain_errors_exit_3() {
    let dir = fixtures();
    for (args, needle) in [
        (&["smith", "--field", "padic:4", "--matrix", "diag.json"][..], "not prime"),
        (&["weight-compare", "--field", "trivial", "--n", "1", "--kummer", "1:2"], "discretely valued"),
        (&["max-locus", "--field", "piadic-q", "--n", "3", "--semistable", "2,2", "--form", "const.json"], "dimension"),
        (&["max-locus", "--field", "piadic-q", "--semistable", "2,-1", "--form", "const.json"], "must be positive"),
        (&["index", "--field", "padic:3", "--index", "diag.json"], ""),
    ] {
        let out = kahler(args, dir.path());
        let err = String::from_utf8(out.stderr).unwrap();
        if needle.is_empty() {
            // wrong schema for the index file: a parse error
            assert_eq!(out.status.code(), Some(2), "{args:?}: {err}");
        } else {
            assert_eq!(out.status.code(), Some(3), "{args:?}: {err}");
            assert!(err.contains(needle), "{args:?}: {err}");
        }
    }
    write(&dir, "zero.json", &json!({ "substitutions": ["s1", "0"] }));
    let out = kahler(&["tame-check", "--field", "padic:3", "--n", "2", "--chart", "zero.json"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_byte_stable() {
    let dir = fixtures();
    let runs: Vec<Vec<u8>> = (0..3)
        .map(|_| kahler(&["max-locus", "--field", "piadic-q", "--semistable", "2,2", "--form", "const.json"], dir.path()).stdout)
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
    let out = kahler(&["weight-compare", "--field", "padic:3", "--n", "1", "--kummer", "1:2"], dir.path()).stdout;
    let text = String::from_utf8(out).unwrap();
    let keys: Vec<usize> = ["\"wt\"", "\"omega\"", "\"delta_log\"", "\"holds\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}
