use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bedom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bedom")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_graph(dir: &Path, name: &str, gen: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut args = vec!["gen"];
    args.extend_from_slice(gen);
    args.extend(["--out", path.to_str().unwrap()]);
    let out = bedom(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn gen_writes_parseable_edge_lists() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_graph(dir.path(), "grid.el", &["grid", "3", "4"]);
    let text = std::fs::read_to_string(p).unwrap();
    let g = bedom::Graph::parse_edge_list(&text).unwrap();
    assert_eq!((g.n(), g.m()), (12, 17));
    let out = bedom(&["gen", "random", "12", "0.3", "--seed", "5"]);
    assert_eq!(out.stdout, bedom(&["gen", "random", "12", "0.3", "--seed", "5"]).stdout);
    assert_ne!(out.stdout, bedom(&["gen", "random", "12", "0.3", "--seed", "6"]).stdout);
}

#[test]
fn domset_reports_a_dominating_set() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "star.el", &["star", "6"]);
    let out = bedom(&["domset", g.to_str().unwrap(), "1", "--verify"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["D_size"], 1);
    let out = bedom(&["domset", g.to_str().unwrap(), "1", "--connected", "minor"]);
    assert!(out.status.success());
}

#[test]
fn usage_and_io_errors_exit_with_one() {
    assert_eq!(bedom(&["bogus"]).status.code(), Some(1));
    assert_eq!(bedom(&["domset", "/nonexistent/graph.el", "1"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.el");
    std::fs::write(&bad, "1 x\n").unwrap();
    assert_eq!(bedom(&["domset", bad.to_str().unwrap(), "1"]).status.code(), Some(1));
}

#[test]
fn bandwidth_violation_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "p.el", &["path", "8"]);
    let out = bedom(&["simulate", g.to_str().unwrap(), "1", "domset", "congest_bc", "--kappa", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn kappa_can_come_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "p.el", &["path", "8"]);
    let out = Command::new(env!("CARGO_BIN_EXE_bedom"))
        .args(["simulate", g.to_str().unwrap(), "1", "wreach", "congest_bc"])
        .env("BEDOM_KAPPA", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn mutated_cover_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "pk.el", &["partial_ktree", "20", "2", "0.8", "--seed", "3"]);
    let gs = g.to_str().unwrap();
    let out = bedom(&["cover", gs, "1"]);
    assert!(out.status.success());
    let mut cover = json(&out);

    let good = dir.path().join("good.json");
    std::fs::write(&good, serde_json::to_vec(&cover).unwrap()).unwrap();
    let ok = bedom(&["verify", gs, "1", "--cover", good.to_str().unwrap(), "--no-protocols"]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));

    // empty every cluster but the first: vertices go uncovered
    for (i, (_, members)) in cover["clusters"].as_object_mut().unwrap().iter_mut().enumerate() {
        if i > 0 {
            *members = Value::Array(vec![]);
        }
    }
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_vec(&cover).unwrap()).unwrap();
    let out = bedom(&["verify", gs, "1", "--cover", bad.to_str().unwrap(), "--no-protocols"]);
    assert_eq!(out.status.code(), Some(2));
    let report = json(&out);
    assert_eq!(report["pass"], false);
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"cover_covering"), "{failed:?}");
}

#[test]
fn trace_file_has_one_line_per_round() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "grid.el", &["grid", "4", "4"]);
    let trace = dir.path().join("t.jsonl");
    let out = bedom(&["simulate", g.to_str().unwrap(), "2", "wreach", "--trace", trace.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["matches_sequential"], true);
    let lines: Vec<Value> = std::fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    for (i, l) in lines.iter().enumerate() {
        assert_eq!(l["round"], i + 1);
    }
}

#[test]
fn every_protocol_matches_sequential() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "t.el", &["random_tree", "25", "--seed", "11"]);
    for protocol in ["wreach", "domset", "cds-congest", "cds-local"] {
        for source in ["injected", "peeling"] {
            let out = bedom(&["simulate", g.to_str().unwrap(), "2", protocol, "--order-source", source]);
            assert!(out.status.success(), "{protocol} {source}: {}", String::from_utf8_lossy(&out.stderr));
            assert_eq!(json(&out)["matches_sequential"], true, "{protocol} {source}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "pk.el", &["partial_ktree", "30", "3", "0.7", "--seed", "1"]);
    let gs = g.to_str().unwrap();
    for args in [
        vec!["domset", gs, "2", "--connected", "wreach"],
        vec!["cover", gs, "1"],
        vec!["simulate", gs, "1", "cds-congest"],
        vec!["verify", gs, "1"],
    ] {
        assert_eq!(bedom(&args).stdout, bedom(&args).stdout, "{args:?}");
    }
}
