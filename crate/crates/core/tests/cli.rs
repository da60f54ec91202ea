use std::path::Path;

use crossmono::cli::{run_with, EXIT_OK, EXIT_PIPELINE, EXIT_USAGE, EXIT_VERIFY};
use crossmono::GeometricGraph;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run_with(std::iter::once("crossmono").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn gen(dir: &Path, name: &str, kind: &str, n: &str, density: &str) -> String {
    let d = dir.to_str().unwrap();
    let (code, _) = run(&["gen", "--kind", kind, "--n", n, "--density", density, "--name", name, "--out-dir", d, "--seed", "4"]);
    assert_eq!(code, EXIT_OK);
    dir.join(format!("{name}.graph")).to_str().unwrap().to_string()
}

#[test]
fn gen_is_deterministic_and_parses() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen(dir.path(), "a", "convex-position", "8", "1");
    let b = gen(dir.path(), "b", "convex-position", "8", "1");
    let (ta, tb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(ta, tb);
    let g = GeometricGraph::parse(&ta).unwrap();
    assert_eq!(g.edge_count(), 28);
    let (code, out) = run(&["crossings", "--graph", &a]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "70");
}

#[test]
fn color_strategies_write_coloring_files() {
    let dir = tempfile::tempdir().unwrap();
    let graph = gen(dir.path(), "g", "uniform-square", "14", "3/4");
    let g = GeometricGraph::parse(&std::fs::read_to_string(&graph).unwrap()).unwrap();
    for strategy in ["random", "greedy", "bundle"] {
        let (code, out) = run(&["color", "--graph", &graph, "--strategy", strategy, "--k", "2", "--seed", "1"]);
        assert_eq!(code, EXIT_OK, "{strategy}");
        let c = crossmono::EdgeColoring::parse(&out, &g, Some(2)).unwrap();
        assert_eq!(c.len(), g.edge_count());
    }
    let (code, out) = run(&["color", "--graph", &graph, "--format", "svg"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.matches("<line ").count(), g.edge_count());
}

#[test]
fn bundles_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let graph = gen(dir.path(), "k", "convex-position", "14", "1");
    let (code, out) = run(&["bundles", "--graph", &graph, "--k", "2"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["bundles"].as_array().unwrap().len(), 2);
    assert!(v["bundles"][0]["y"].is_array() && v["bundles"][0]["edges"].is_array());
    let file = dir.path().join("bundles.json");
    std::fs::write(&file, &out).unwrap();
    let (code, report) = run(&["verify", "--graph", &graph, "--bundles", file.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{report}");

    // Opposite sides of a square never cross.
    let square = dir.path().join("square.graph");
    std::fs::write(&square, "0 0\n10 0\n10 10\n0 10\nEDGES\n0 1\n1 2\n2 3\n0 3\n0 2\n1 3\n").unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"[{"y": [0], "z": [1]}, {"y": [2], "z": [3]}]"#).unwrap();
    let (code, _) = run(&["verify", "--graph", square.to_str().unwrap(), "--bundles", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_VERIFY);
}

#[test]
fn regularity_and_sametype_commands() {
    let dir = tempfile::tempdir().unwrap();
    let graph = gen(dir.path(), "r", "uniform-square", "16", "3/4");
    let (code, out) = run(&["regularity", "--graph", &graph, "--eps", "1/4"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["partition"]["epsilon"]["den"], 4);

    let parts = dir.path().join("parts.json");
    std::fs::write(&parts, "[[0,1,2,3],[4,5,6,7],[8,9,10,11]]").unwrap();
    let p = parts.to_str().unwrap();
    let (code, out) = run(&["sametype", "--graph", &graph, "--parts", p, "--refine"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let refined = serde_json::to_string(&v["partition"]).unwrap();
    std::fs::write(&parts, refined).unwrap();
    let (code, _) = run(&["sametype", "--graph", &graph, "--parts", p, "--check"]);
    assert_eq!(code, EXIT_OK);
    let (code, _) = run(&["sametype", "--graph", &graph, "--parts", p]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn report_writes_json_csv_svg() {
    let dir = tempfile::tempdir().unwrap();
    let graph = gen(dir.path(), "c", "convex-position", "16", "1");
    let out_dir = dir.path().join("out");
    let o = out_dir.to_str().unwrap();
    let (code, _) = run(&["report", "--graph", &graph, "--pipeline", "full-theorem", "--k", "2", "--out-dir", o, "--format", "svg"]);
    assert_eq!(code, EXIT_OK);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join("c.json")).unwrap()).unwrap();
    assert!(json["certificate"]["c"]["num"].as_i64().unwrap() > 0);
    assert!(json["certificate"]["c"]["decimal"].is_string() || json["certificate"]["c"]["decimal"].is_number());
    let csv = std::fs::read_to_string(out_dir.join("c.csv")).unwrap();
    assert!(csv.starts_with(crossmono::report::CSV_HEADER));
    let svg = std::fs::read_to_string(out_dir.join("c.svg")).unwrap();
    assert_eq!(svg.matches("<line ").count(), 120);

    let (code, out) = run(&["report", "--graph", &graph, "--pipeline", "greedy", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn crossing_free_graph_fails_full_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("path.graph");
    std::fs::write(&file, "0 0\n1 5\n3 2\n7 9\nEDGES\n0 1\n1 2\n2 3\n").unwrap();
    let (code, _) = run(&["report", "--graph", file.to_str().unwrap(), "--pipeline", "full-theorem"]);
    assert_eq!(code, EXIT_PIPELINE);
    let (code, _) = run(&["crossings", "--graph", "/nonexistent/graph"]);
    assert_eq!(code, EXIT_USAGE);
}
