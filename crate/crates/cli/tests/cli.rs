use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sofic_core::graph::{HalvingReport, LabeledGraph, WeissReport};
use sofic_core::sofic::{ApproxMap, Certificate, EpsilonStar};
use sofic_core::Fraction;
use tempfile::TempDir;

fn sofic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sofic")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn write(dir: &TempDir, name: &str, out: &Output) -> PathBuf {
    assert_eq!(code(out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let path = dir.path().join(name);
    fs::write(&path, &out.stdout).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn bicyclic_ball() {
    let out = sofic(&["ball", "--monoid", "bicyclic", "--r", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["size"], 6);
    assert_eq!(v["elements"], serde_json::json!(["1", "p", "q", "pp", "qp", "qq"]));
    let dot = stdout(&sofic(&["ball", "--monoid", "bicyclic", "--r", "1", "--format", "dot"]));
    assert!(dot.starts_with("digraph G {"));
    assert!(dot.contains("\"1\" [shape=doublecircle];"));
    assert!(dot.contains("\"1\" -> \"p\" [label=\"p\"];"));
}

#[test]
fn weiss_exit_codes_and_schema() {
    let dir = TempDir::new().unwrap();
    let cycle = write(&dir, "c10.json", &sofic(&["gen", "--family", "cycle", "--n", "10", "--format", "json"]));
    let pass = sofic(&["weiss", "--graph", p(&cycle), "--monoid", "naturals", "--r", "3", "--delta", "1/10", "--format", "json"]);
    assert_eq!(code(&pass), 0);
    let rep: WeissReport = serde_json::from_slice(&pass.stdout).unwrap();
    assert_eq!(rep.good_count, 10);
    assert_eq!(rep.delta, Fraction::new(1, 10));
    let fail = sofic(&["weiss", "--graph", p(&cycle), "--monoid", "naturals", "--r", "9", "--delta", "1/10"]);
    assert_eq!(code(&fail), 1);
    let path = write(&dir, "p6.json", &sofic(&["gen", "--family", "path", "--n", "6", "--format", "json"]));
    let good = json(&sofic(&["good-vertices", "--graph", p(&path), "--monoid", "naturals", "--r", "2", "--format", "json"]));
    assert_eq!(good["good"], serde_json::json!(["0", "1", "2", "3"]));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(code(&sofic(&["weiss", "--graph", "missing.json", "--monoid", "naturals", "--r", "1", "--delta", "1/2"])), 2);
    assert_eq!(code(&sofic(&["epsilon-star", "--n", "2", "--mode", "sideways"])), 2);
    assert_eq!(code(&sofic(&["ball", "--monoid", "bicyclic", "--r", "x"])), 2);
    assert_eq!(code(&sofic(&["ball", "--monoid", "nonesuch", "--r", "1"])), 2);
    assert_eq!(code(&sofic(&["frobnicate"])), 2);
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"labels\": [\"a\"], \"vertices\": []").unwrap();
    let out = sofic(&["halving-check", "--graph", p(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.json"));
    assert_eq!(code(&sofic(&["epsilon-star", "--n", "2", "--format", "dot"])), 2);
}

#[test]
fn epsilon_star_and_certificate() {
    let out = sofic(&["epsilon-star", "--n", "2", "--mode", "relaxed", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let star: EpsilonStar = serde_json::from_slice(&out.stdout).unwrap();
    assert!(star.value >= Fraction::new(1, 5));
    assert_eq!(code(&sofic(&["epsilon-star", "--n", "3", "--mode", "full"])), 2);

    let dir = TempDir::new().unwrap();
    let tuple = dir.path().join("tuple.json");
    fs::write(&tuple, r#"{"h":[0,1,2],"f":[0,0,0],"g":[1,2,0],"k":[0,1,2]}"#).unwrap();
    let out = sofic(&["certify-bicyclic", "--input", p(&tuple), "--epsilon", "1/10", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let cert: Certificate = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert.d_fg_id, Fraction::new(2, 3));
    assert_eq!(cert.d_gf_id, Fraction::new(2, 3));

    let approx = dir.path().join("approx.json");
    fs::write(&approx, r#"{"x_size":3,"convention":"diagrammatic","assignments":{"qp":[0,0,2],"p":[1,1,1]}}"#).unwrap();
    let out = sofic(&["certify-bicyclic", "--input", p(&approx), "--epsilon", "1/10", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["convention"], "diagrammatic");
}

#[test]
fn bridges_round_trip() {
    let dir = TempDir::new().unwrap();
    let cycle = write(&dir, "c10.json", &sofic(&["gen", "--family", "cycle", "--n", "10", "--format", "json"]));
    let out = sofic(&[
        "bridge-g2m", "--graph", p(&cycle), "--monoid", "naturals", "--k", "ball:2", "--epsilon", "1/4", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["verified"], true);
    assert_eq!((v["r0"].as_u64(), v["r"].as_u64()), (Some(4), Some(8)));
    let approx = dir.path().join("phi.json");
    fs::write(&approx, serde_json::to_string(&v["approx"]).unwrap()).unwrap();
    let phi = ApproxMap::from_json_str(&fs::read_to_string(&approx).unwrap(), None).unwrap();
    assert_eq!(phi.x_size(), 10);

    let verify = sofic(&["verify", "--approx", p(&approx), "--k", "0,1,2", "--epsilon", "0/1", "--format", "json"]);
    assert_eq!(code(&verify), 0);
    assert_eq!(json(&verify)["pass"], true);

    let m2g = sofic(&["bridge-m2g", "--approx", p(&approx), "--r", "1", "--delta", "1/10", "--format", "json"]);
    assert_eq!(code(&m2g), 0, "{}", String::from_utf8_lossy(&m2g.stderr));
    let graph: LabeledGraph = LabeledGraph::from_json(serde_json::from_value(json(&m2g)["graph"].clone()).unwrap()).unwrap();
    assert_eq!(graph.vertex_count(), 10);
    let dot = stdout(&sofic(&["bridge-m2g", "--approx", p(&approx), "--r", "1", "--delta", "1/10", "--format", "dot"]));
    assert!(dot.contains("-> \"1\" [label=\"1\"]"));

    let short = write(&dir, "p5.json", &sofic(&["gen", "--family", "path", "--n", "5", "--format", "json"]));
    let fail = sofic(&["bridge-g2m", "--graph", p(&short), "--monoid", "naturals", "--k", "ball:1", "--epsilon", "1/10"]);
    assert_eq!(code(&fail), 1);
}

#[test]
fn schreier_bridge_extensions() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "s6.json", &sofic(&["gen", "--family", "schreier", "--n", "6", "--format", "json"]));
    let args = ["bridge-g2m", "--graph", p(&g), "--monoid", "full-map:2", "--k", "ball:1", "--epsilon", "1/10"];
    assert_eq!(code(&sofic(&args)), 0);
    let mut literal = args.to_vec();
    literal.extend(["--extension", "identity"]);
    assert_eq!(code(&sofic(&literal)), 1);
}

#[test]
fn combinators() {
    let dir = TempDir::new().unwrap();
    let adj = sofic(&["adjoin-id", "--semigroup", "left-zero-2", "--epsilon", "1/4", "--format", "json"]);
    assert_eq!(code(&adj), 0);
    let v = json(&adj);
    assert_eq!(v["z_size"], 12);
    assert_eq!(v["bound"], "3/4");
    let phi = dir.path().join("adj.json");
    fs::write(&phi, serde_json::to_string(&v["approx"]).unwrap()).unwrap();

    let amp = write(&dir, "amp.json", &sofic(&["amplify", "--approx", p(&phi), "--power", "2", "--format", "json"]));
    assert_eq!(ApproxMap::from_json_str(&fs::read_to_string(&amp).unwrap(), None).unwrap().x_size(), 256);

    let idem = sofic(&["adjoin-id", "--semigroup", "idempotent", "--epsilon", "1/2", "--format", "json"]);
    let other = dir.path().join("idem.json");
    fs::write(&other, serde_json::to_string(&json(&idem)["approx"]).unwrap()).unwrap();
    let prod = sofic(&["product", "--approx", p(&phi), "--approx", p(&other), "--format", "json"]);
    assert_eq!(code(&prod), 0);
    assert_eq!(json(&prod)["x_size"], 16 * 6);
    assert_eq!(code(&sofic(&["product", "--approx", p(&phi)])), 2);
}

#[test]
fn search_statuses() {
    let none = sofic(&[
        "search", "--monoid", "bicyclic", "--k", "1,p,q,qp", "--epsilon", "1/10", "--n", "2", "--format", "json",
    ]);
    assert_eq!(code(&none), 1);
    assert_eq!(json(&none)["status"], "none_exists");
    let found = sofic(&["search", "--monoid", "cyclic:3", "--k", "ball:2", "--epsilon", "0/1", "--n", "3", "--format", "json"]);
    assert_eq!(code(&found), 0);
    assert_eq!(json(&found)["status"], "found");
    let cut = sofic(&[
        "search", "--monoid", "bicyclic", "--k", "1,p,q,qp", "--epsilon", "1/10", "--n", "2", "--budget", "5",
        "--format", "json",
    ]);
    assert_eq!(json(&cut)["status"], "inconclusive");
}

#[test]
fn halving_and_folner() {
    let dir = TempDir::new().unwrap();
    let ball = write(&dir, "b6.json", &sofic(&["gen", "--family", "cayley", "--monoid", "bicyclic", "--r", "6", "--format", "json"]));
    let out = sofic(&["halving-check", "--graph", p(&ball), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let rep: HalvingReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rep.halving && 2 * rep.good.len() <= rep.vertex_count);

    let f = json(&sofic(&["folner", "--monoid", "bicyclic", "--omega", "ball:2", "--k", "1,p", "--format", "json"]));
    assert_eq!(f["omega_size"], 6);
    assert_eq!(f["interior"], serde_json::json!(["1", "p", "q"]));
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["gen", "--family", "random", "--n", "30", "--fill", "0.8", "--seed", "4", "--format", "json"],
        vec!["epsilon-star", "--n", "3", "--format", "json", "--jobs", "3"],
        vec!["search", "--monoid", "cyclic:3", "--k", "ball:2", "--epsilon", "1/3", "--n", "3", "--seed", "9"],
    ];
    for args in &runs {
        let a = sofic(args);
        let b = sofic(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status, b.status);
    }
}
