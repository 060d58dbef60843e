use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

use qmdecide::commands::CliError;
use qmdecide::report::Report;
use qmdecide_core::Error;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_qmdecide")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json_of(r: &Run) -> Value {
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const COR_4_1: &str = r#"{"ground":{"p":2,"r":2},"isogeny":{"factors":[{"h":[-2,1],"m":4}]},
  "field_E":{"defining_poly":[1,0,1]},"algebra_D":{"ramified_places":["p=5#1","p=5#2"]}}"#;
const ABOVE_17: &str = r#"{"ground":{"p":2,"r":1},"isogeny":{"factors":[{"h":[-2,0,1],"m":2}]},
  "field_E":{"defining_poly":[1,0,1]},"algebra_D":{"ramified_places":["p=17#1","p=17#2"]}}"#;
const SMALLER: &str = r#"{"ground":{"p":2,"r":2},"isogeny":{"factors":[{"h":[-2,1],"m":2}]},
  "field_E":{"defining_poly":[1,0,1]},"algebra_D":{"split":true}}"#;

#[test]
fn weil_examples() {
    for poly in ["2,0,1", "-2,0,1"] {
        let v = json_of(&run(&["weil", "--q", "2", "--poly", poly]));
        assert_eq!(v["result"]["valid"], true, "{poly}");
    }
    let v = json_of(&run(&["weil", "--q", "4", "--poly", "4,-5,1"]));
    assert_eq!(v["result"]["valid"], false);
    assert_eq!(v["result"]["irreducible"], false);

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("corpus.txt");
    let v = json_of(&run(&["weil", "--q", "2", "--enumerate", "2", "--output", out.to_str().unwrap()]));
    assert_eq!(v["result"]["count"], 6);
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().all(|l| l.starts_with("2; ")));
}

#[test]
fn places_examples() {
    let v = json_of(&run(&["places", "--poly", "1,0,1", "--p", "5"]));
    let ps = v["result"]["places"].as_array().unwrap();
    let labels: Vec<&str> = ps.iter().map(|p| p["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["p=5#1", "p=5#2"]);
    assert!(ps.iter().all(|p| p["e"] == 1 && p["f"] == 1));

    let v = json_of(&run(&["places", "--poly", "1,0,1", "--p", "2"]));
    let ps = v["result"]["places"].as_array().unwrap();
    assert_eq!(ps.len(), 1);
    assert_eq!((ps[0]["e"].as_u64(), ps[0]["f"].as_u64()), (Some(2), Some(1)));

    let v = json_of(&run(&["places", "--poly", "1,0,1"]));
    let ps = v["result"]["places"].as_array().unwrap();
    assert_eq!(ps.len(), 1);
    assert_eq!(ps[0]["kind"], "complex");
}

#[test]
fn endalg_examples() {
    let v = json_of(&run(&["endalg", "--q", "2", "--poly", "-2,0,1"]));
    assert_eq!((v["result"]["c"].as_u64(), v["result"]["dim"].as_u64()), (Some(2), Some(2)));
    assert_eq!(v["result"]["classification"], "SurfaceDPrime");

    let v = json_of(&run(&["endalg", "--q", "4", "--poly", "-2,1"]));
    assert_eq!((v["result"]["c"].as_u64(), v["result"]["dim"].as_u64()), (Some(2), Some(1)));
    assert_eq!(v["result"]["classification"], "EllipticDp");

    let v = json_of(&run(&["endalg", "--q", "3", "--poly", "3,-1,1"]));
    assert_eq!((v["result"]["c"].as_u64(), v["result"]["dim"].as_u64()), (Some(1), Some(1)));
}

#[test]
fn qm_examples() {
    let dir = TempDir::new().unwrap();
    let cases = [(COR_4_1, "yes", None), (ABOVE_17, "no", None), (SMALLER, "yes", Some("smaller-dim"))];
    for (i, (text, verdict, path)) in cases.iter().enumerate() {
        let f = write(&dir, &format!("p{i}.json"), text);
        let v = json_of(&run(&["qm", "--problem", &f]));
        assert_eq!(v["decision"]["verdict"], *verdict, "{text}");
        if let Some(p) = path {
            assert_eq!(v["decision"]["path"], *p);
        }
        let both = json_of(&run(&["qm", "--problem", &f, "--path", "both"]));
        assert_eq!(both["decision"]["verdict"], *verdict);
        assert_eq!(both["result"]["oracle"]["verdict"], *verdict);
    }
}

#[test]
fn surface_examples() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (r#"{"ground":{"p":3,"r":2},"isogeny":{"factors":[{"h":[-3,1],"m":2}]},"algebra_D":{"hilbert":[-1,-1]}}"#, "a"),
        (r#"{"ground":{"p":3,"r":1},"isogeny":{"factors":[{"h":[3,-1,1],"m":2}]},"algebra_D":{"hilbert":[-1,-1]}}"#, "b"),
        (r#"{"ground":{"p":2,"r":1},"isogeny":{"factors":[{"h":[-2,0,1],"m":1}]},"algebra_D":{"hilbert":[-1,-1]}}"#, "c"),
    ];
    for (i, (text, case)) in cases.iter().enumerate() {
        let f = write(&dir, &format!("s{i}.json"), text);
        let v = json_of(&run(&["surface", "--problem", &f]));
        assert_eq!(v["decision"]["verdict"], "yes", "{text}");
        assert_eq!(v["result"]["case"], *case, "{text}");
    }
}

#[test]
fn yu_command() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "y.json", r#"{"blocks":[{"v_dim":8,"delta_dim":4,"factors":[{"m":2,"d_dim":4},{"m":1,"d_dim":4}]}]}"#);
    let v = json_of(&run(&["yu", "--problem", &f]));
    assert!(v["result"]["feasible"].is_boolean());
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    // malformed input
    assert_eq!(run(&["weil", "--q", "2", "--poly", "1,x"]).code, 2);
    assert_eq!(run(&["weil", "--q", "6", "--poly", "2,0,1"]).code, 2);
    assert_eq!(run(&["endalg", "--q", "4", "--poly", "4,-5,1"]).code, 2);
    assert_eq!(run(&["places", "--poly", "2,3,1", "--p", "5"]).code, 2);
    let bad = write(&dir, "bad.json", r#"{"ground":{"p":2,"r":1},"isogeny":{"charpoly":[-2,0,1]},"extra":1,"algebra_D":{"split":true}}"#);
    assert_eq!(run(&["qm", "--problem", &bad]).code, 2);
    let label = write(
        &dir,
        "label.json",
        r#"{"ground":{"p":2,"r":1},"isogeny":{"charpoly":[-2,0,1]},"field_E":{"defining_poly":[1,0,1]},"algebra_D":{"ramified_places":["p=5#3","p=5#1"]}}"#,
    );
    let r = run(&["qm", "--problem", &label]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error:"));
    assert_eq!(run(&["qm", "--problem", "/nonexistent/problem.json"]).code, 2);
    // certification limit
    assert_eq!(run(&["places", "--poly", "1,0,1", "--p", "2", "--precision-cap", "1"]).code, 3);
    let ok = write(&dir, "ok.json", COR_4_1);
    assert_eq!(run(&["qm", "--problem", &ok, "--precision-cap", "1"]).code, 3);
    assert_eq!(run(&["qm", "--problem", &ok]).code, 0);
}

#[test]
fn oracle_disagreement_maps_to_exit_4() {
    // no valid input reaches a disagreement, so the mapping is checked directly
    let e: CliError = Error::OracleDisagreement("x".into()).into();
    assert_eq!(e.code, 4);
    let e: CliError = Error::InternalInconsistency("x".into()).into();
    assert_eq!(e.code, 4);
    let e: CliError = Error::CertificationFailed("x".into()).into();
    assert_eq!(e.code, 3);
}

fn strip_timings(mut v: Value) -> Value {
    if let Some(a) = v.as_array_mut() {
        for x in a.iter_mut() {
            *x = strip_timings(x.take());
        }
    } else if let Some(o) = v.as_object_mut() {
        o.remove("timings");
    }
    v
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let files: Vec<String> = [COR_4_1, ABOVE_17, SMALLER]
        .iter()
        .enumerate()
        .map(|(i, t)| write(&dir, &format!("r{i}.json"), t))
        .collect();
    let one = run(&["qm", "--problem", &files[0], "--path", "both"]);
    let parsed = Report::from_json(&one.stdout).unwrap();
    assert_eq!(parsed.to_json() + "\n", one.stdout);

    let mut args = vec!["qm"];
    for f in &files {
        args.extend(["--problem", f.as_str()]);
    }
    let a = run(&args);
    let mut parallel = args.clone();
    parallel.extend(["--jobs", "3"]);
    let b = run(&parallel);
    let (va, vb) = (strip_timings(json_of(&a)), strip_timings(json_of(&b)));
    assert_eq!(va, vb);
    assert_eq!(va.as_array().unwrap().len(), 3);
    assert_eq!(va[1]["decision"]["verdict"], "no");

    let r1 = strip_timings(json_of(&run(&["endalg", "--q", "2", "--poly", "-2,0,1"])));
    let r2 = strip_timings(json_of(&run(&["endalg", "--q", "2", "--poly", "-2,0,1"])));
    assert_eq!(serde_json::to_string(&r1).unwrap(), serde_json::to_string(&r2).unwrap());
}
