use std::path::PathBuf;
use std::process::{Command, Output};

use merozeta::exactalg::{parse_rat, CycloProduct, Poly, RationalFunction};
use merozeta::resgraph::{isomorphic, parse_graph};
use serde_json::Value;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_merozeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn structured(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let o = run(&all);
    (
        serde_json::from_slice(&o.stdout).unwrap(),
        o.status.code().unwrap(),
    )
}

fn poly(v: &Value) -> Poly {
    Poly::new(
        v.as_array()
            .unwrap()
            .iter()
            .map(|c| parse_rat(c.as_str().unwrap()).unwrap())
            .collect(),
    )
}

#[test]
fn zeta_example1_text() {
    let o = run(&["zeta", "--graph", &fixture("example1.graph.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("factored: (1-t^5)(1-t^15)/((1-t^10)(1-t^30))"));
    assert!(s.contains("factored: (20s^2+33s+12)/(15(s+1)(2s+1)^2)"));
    assert!(!s.contains("global"));
    let g = run(&[
        "zeta",
        "--global",
        "--graph",
        &fixture("example1.graph.json"),
    ]);
    assert!(stdout(&g).contains("topological_zeta_global"));
}

#[test]
fn structured_zeta_round_trips() {
    let (v, code) = structured(&["zeta", "--graph", &fixture("example1.graph.json")]);
    assert_eq!(code, 0);
    let z = &v["topological_zeta"];
    let f = RationalFunction::from_polys(&poly(&z["numerator"]), &poly(&z["denominator"])).unwrap();
    assert_eq!(f.render(), z["factored"].as_str().unwrap());
    let pairs = v["monodromy_zeta"]["exponents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_u64().unwrap(), p[1].as_i64().unwrap()));
    let c = CycloProduct::from_pairs(pairs);
    assert_eq!(
        c.render(),
        v["monodromy_zeta"]["factored"].as_str().unwrap()
    );
    // The text form carries the same strings.
    let text = stdout(&run(&["zeta", "--graph", &fixture("example1.graph.json")]));
    for key in ["factored", "reduced"] {
        assert!(text.contains(z[key].as_str().unwrap()));
        assert!(text.contains(v["monodromy_zeta"][key].as_str().unwrap()));
    }
}

#[test]
fn check_example2() {
    let (v, code) = structured(&["check", "--graph", &fixture("example2.graph.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], Value::Bool(true));
    let poles: Vec<&str> = v["poles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["pole"].as_str().unwrap())
        .collect();
    assert_eq!(poles, vec!["-1", "-4/7", "-1/2"]);
    assert_eq!(v["candidates_not_poles"], serde_json::json!(["-3/5"]));
}

#[test]
fn resolve_to_file_matches_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e1.graph.json");
    let o = run(&[
        "resolve",
        "--germ",
        &fixture("example1.germ.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let got = parse_graph(&std::fs::read(&out).unwrap()).unwrap();
    let want = parse_graph(&std::fs::read(fixture("example1.graph.json")).unwrap()).unwrap();
    assert!(isomorphic(&got, &want));
    let z = run(&["zeta", "--graph", out.to_str().unwrap()]);
    assert!(stdout(&z).contains("(20s^2+33s+12)/(15(s+1)(2s+1)^2)"));
}

#[test]
fn poles_table() {
    let (v, code) = structured(&["poles", "--graph", &fixture("example1.graph.json")]);
    assert_eq!(code, 0);
    let p = v["poles"].as_array().unwrap();
    assert_eq!(p.len(), 2);
    assert_eq!(p[0]["location"], "-1");
    assert_eq!(p[0]["order"], 1);
    assert_eq!(p[1]["location"], "-1/2");
    assert_eq!(p[1]["order"], 2);
    assert_eq!(
        p[1]["candidates"],
        serde_json::json!(["E3", "E4", "E5", "E7"])
    );
    assert!(!p[1]["veys_witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn validate_audit_report() {
    for cmd in ["validate", "audit", "report"] {
        let o = run(&[cmd, "--germ", &fixture("example1.germ.json")]);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stdout(&o));
    }
    let (v, code) = structured(&[
        "audit",
        "--d",
        "2",
        "--graph",
        &fixture("example1.graph.json"),
    ]);
    assert_eq!(code, 0);
    let cd = v["c_d"].as_array().unwrap();
    assert_eq!(cd.len(), 1);
    assert_eq!(cd[0]["d"], 2);
}

#[test]
fn failures_set_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // tamper nu(E4) in Example 1: the alpha relation breaks
    let text = std::fs::read_to_string(fixture("example1.graph.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    for c in v["components"].as_array_mut().unwrap() {
        if c["id"] == "E4" {
            c["nu"] = 7.into();
        }
    }
    let bad = dir.path().join("tampered.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    assert_eq!(
        run(&["validate", "--graph", bad.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );

    let missing = dir.path().join("nope.json");
    assert_eq!(
        run(&["zeta", "--graph", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{").unwrap();
    assert_eq!(
        run(&["check", "--graph", junk.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["zeta"]).status.code(), Some(2));

    // (y^2 - 2x^2)^2 + x^5 stays tangent to itself at x = ±√2 y
    let germ = r#"{"P":[{"c":"1","ex":0,"ey":4},{"c":"-4","ex":2,"ey":2},{"c":"4","ex":4,"ey":0},{"c":"1","ex":5,"ey":0}],"Q":[{"c":"1","ex":0,"ey":0}]}"#;
    let g = dir.path().join("irr.germ.json");
    std::fs::write(&g, germ).unwrap();
    assert_eq!(
        run(&["resolve", "--germ", g.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    let not_germ = r#"{"P":[{"c":"1","ex":0,"ey":0}],"Q":[{"c":"1","ex":1,"ey":0}]}"#;
    std::fs::write(&g, not_germ).unwrap();
    assert_eq!(
        run(&["resolve", "--germ", g.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}
