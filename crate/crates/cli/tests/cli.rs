use std::path::PathBuf;
use std::process::Command;

use prym_core::io::{cover_to_json, graph_to_json};
use prym_core::{fixtures, rat::int};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn prym(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_prym")).args(args).output().expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), json)
}

fn with_fixture(name: &str, args: &[&str]) -> (i32, Value) {
    let graph = data(&format!("{name}.graph.json"));
    let cover = data(&format!("{name}.cover.json"));
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--graph", graph.to_str().unwrap(), "--cover", cover.to_str().unwrap()]);
    prym(&all)
}

#[test]
fn bundled_documents_match_fixtures() {
    let cases = [
        ("double_edge_chain", fixtures::double_edge_chain()),
        ("looped_path", fixtures::looped_path()),
        ("dumbbell", fixtures::dumbbell([int(2), int(3), int(5)], true)),
        ("mixed_degree", fixtures::mixed_degree_cover(int(4))),
    ];
    for (name, cover) in cases {
        let graph = std::fs::read_to_string(data(&format!("{name}.graph.json"))).unwrap();
        let doc = std::fs::read_to_string(data(&format!("{name}.cover.json"))).unwrap();
        assert_eq!(graph.trim_end(), graph_to_json(cover.base()), "{name}");
        assert_eq!(doc.trim_end(), cover_to_json(&cover), "{name}");
    }
}

#[test]
fn prym_order_all_methods() {
    let (code, report) = with_fixture("double_edge_chain", &["prym", "order", "--method", "all"]);
    assert_eq!(code, 0);
    let r = &report["results"];
    assert_eq!(r["ratio"], "8");
    assert_eq!(r["signed_det"], "8");
    assert_eq!(r["ogod_sum"], "8");
    assert_eq!(r["agree"], true);
    assert_eq!(report["agreement"], true);
    assert_eq!(report["command"], "prym order");
    assert!(report["timing"].is_u64());
    assert_eq!(report["inputs"]["cover"]["flips"], serde_json::json!(["e1", "e2"]));
}

#[test]
fn report_keys_in_canonical_order() {
    let (_, report) = with_fixture("dumbbell", &["prym", "volume"]);
    let keys: Vec<&String> = report.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "inputs", "results", "agreement", "timing"]);
    assert_eq!(report["results"]["gram_determinant"], "25");
}

#[test]
fn every_number_is_exact() {
    fn walk(v: &Value) {
        match v {
            Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "float {n}"),
            Value::Array(a) => a.iter().for_each(walk),
            Value::Object(o) => o.values().for_each(walk),
            _ => {}
        }
    }
    for args in [&["ogods"][..], &["zeta"], &["lfunction"], &["abel-prym", "cells"], &["abel-prym", "fiber"]] {
        let (code, report) = with_fixture("looped_path", args);
        assert_eq!(code, 0, "{args:?}");
        walk(&report);
    }
}

#[test]
fn abel_prym_subcommands() {
    let (code, r) = with_fixture("looped_path", &["abel-prym", "harmonicity"]);
    assert_eq!((code, &r["agreement"]), (0, &Value::Bool(true)));
    let (code, r) = with_fixture("mixed_degree", &["abel-prym", "global-degree", "--cases", "3", "--seed", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["degree_sums"], serde_json::json!([4, 4, 4]));
    let (code, r) = with_fixture("dumbbell", &["abel-prym", "fiber"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["degree_sum"], 2);
}

#[test]
fn svg_only_in_dimension_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cells.svg");
    let (code, _) = with_fixture("looped_path", &["abel-prym", "cells", "--svg", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.matches("<polygon").count() == 89);
    let other = dir.path().join("other.svg");
    let (code, r) = with_fixture("dumbbell", &["abel-prym", "cells", "--svg", other.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["error"]["code"], "svg_dimension");
    assert!(!other.exists());
}

#[test]
fn selftest_is_deterministic() {
    let run = || {
        let (code, mut r) = prym(&["selftest", "--cases", "10", "--seed", "3"]);
        assert_eq!(code, 0);
        r.as_object_mut().unwrap().remove("timing");
        r
    };
    let first = run();
    assert_eq!(first["agreement"], true);
    assert_eq!(first, run());
}

#[test]
fn input_errors_have_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let bad = write("bad.json", "{\"vertices\": [");
    let split = write("split.json", r#"{"vertices": ["a", "b"], "edges": [{"id": "x", "src": "a", "dst": "a"}]}"#);
    let loop_graph = write("loop.json", r#"{"vertices": ["a"], "edges": [{"id": "x", "src": "a", "dst": "a"}]}"#);
    let empty = write("empty.json", r#"{"tree": [], "flips": []}"#);

    let mut codes = Vec::new();
    for args in [
        vec!["genus", "--graph", bad.as_str()],
        vec!["genus", "--graph", split.as_str()],
        vec!["prym", "order", "--graph", loop_graph.as_str(), "--cover", empty.as_str()],
        vec!["genus"],
        vec!["genus", "--graph", "/nonexistent/graph.json"],
        vec!["no-such-command"],
    ] {
        let (code, r) = prym(&args);
        assert_eq!(code, 1, "{args:?}");
        codes.push(r["error"]["code"].as_str().unwrap().to_string());
    }
    assert_eq!(
        codes,
        ["malformed_json", "disconnected_graph", "empty_flip_set", "missing_argument", "io_error", "usage"]
    );
}
