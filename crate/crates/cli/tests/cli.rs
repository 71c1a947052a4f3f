use std::io::Write;
use std::process::{Command, Output, Stdio};

use angulation::angulator::RecognitionReport;
use angulation::formulas::FeasibilityReport;
use angulation::geom::Hull;
use angulation::oracle::ExtremalReport;
use angulation::plane_graph::{GraphDoc, PlaneGraph};
use serde_json::{json, Value};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_angulation"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.unwrap_or("").as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn ok_json(args: &[&str], stdin: Option<&str>) -> Value {
    serde_json::from_str(&ok(args, stdin)).unwrap()
}

#[test]
fn bound_of_convex_triangulation() {
    assert_eq!(
        ok_json(&["bound", "--n", "6", "--g", "3", "--h", "6"], None),
        json!({ "max_edges": 9 })
    );
    assert_eq!(
        ok_json(&["bound", "--n", "5", "--g", "3", "--convex"], None),
        json!({ "max_edges": 7 })
    );
    assert_eq!(
        ok_json(&["bound", "--n", "12", "--g", "5", "--closed"], None),
        json!({ "max_edges": 16 })
    );
}

#[test]
fn feasibility_queries() {
    assert_eq!(
        ok_json(&["feasible", "--n", "7", "--g", "4", "--h", "5"], None),
        json!({ "feasible": false, "reason": "NotDivisible" })
    );
    let v = ok_json(&["feasible", "--n", "14", "--g", "5", "--h", "5"], None);
    let report: FeasibilityReport = serde_json::from_value(v).unwrap();
    let p = report.params.unwrap();
    assert_eq!((p.t, p.m, p.inner_faces), (6, 20, 7));
    assert_eq!(
        ok_json(
            &["feasible", "--n", "10", "--h", "3", "--triangulation"],
            None
        ),
        json!({ "edges": 24, "inner_triangles": 15 })
    );
    assert_eq!(
        ok_json(&["feasible", "--n", "9", "--g", "4", "--convex"], None)["feasible"],
        json!(false)
    );
    assert_eq!(
        ok_json(&["feasible", "--n", "8", "--g", "4", "--closed"], None)["t_prime"],
        json!(2)
    );
}

#[test]
fn construct_then_recognize() {
    let graph = ok(
        &["construct", "--n", "8", "--h", "4", "--g", "4", "--coords"],
        None,
    );
    let doc: GraphDoc = serde_json::from_str(&graph).unwrap();
    assert_eq!(doc.edges.len(), 12);
    assert!(doc.coordinates.is_some());
    PlaneGraph::from_doc(&doc).unwrap();

    let report: RecognitionReport =
        serde_json::from_str(&ok(&["recognize"], Some(&graph))).unwrap();
    assert!(report.is_angulation);
    assert_eq!(
        (report.measured.m, report.measured.g, report.measured.h),
        (12, 4, 4)
    );
}

#[test]
fn triangulate_and_render() {
    let points = r#"{"points": [[0, 0], [8, 1], [9, 9], [1, 8], [5, 3]]}"#;
    let graph = ok(&["triangulate"], Some(points));
    let doc: GraphDoc = serde_json::from_str(&graph).unwrap();
    assert_eq!(doc.edges.len(), 8);

    let svg = ok(&["render"], Some(&graph));
    assert!(svg.contains("y axis flipped"));
    assert_eq!(svg.matches("<line ").count(), 8);
    assert_eq!(svg.matches(">3</text>").count(), 4);
    let bare = ok(
        &["render", "--no-labels", "--width", "200", "--height", "100"],
        Some(&graph),
    );
    assert_eq!(bare.matches("<text").count(), 0);
}

#[test]
fn hull_modes() {
    let points = r#"{"points": [[0, 0], [2, 0], [4, 0], [2, 3]]}"#;
    assert_eq!(run(&["hull"], Some(points)).status.code(), Some(2));
    let hull: Hull = serde_json::from_str(&ok(&["hull", "--lax"], Some(points))).unwrap();
    assert_eq!(hull.h, 4);
}

#[test]
fn oracle_reports() {
    let points = r#"{"points": [[0, 0], [5, 1], [6, 6], [1, 5]]}"#;
    let single: ExtremalReport =
        serde_json::from_str(&ok(&["oracle", "--g", "3", "--h", "4"], Some(points))).unwrap();
    assert_eq!(
        (single.max_edges_found, single.bound, single.witness_count),
        (5, 5, 2)
    );
    let slow: ExtremalReport = serde_json::from_str(&ok(
        &["oracle", "--g", "3", "--h", "4", "--slow"],
        Some(points),
    ))
    .unwrap();
    assert_eq!(single, slow);

    let all: Vec<ExtremalReport> = serde_json::from_str(&ok(
        &["oracle", "--random", "6", "--seed", "7", "--g", "4"],
        None,
    ))
    .unwrap();
    assert!(!all.is_empty());
    assert!(all.iter().all(ExtremalReport::within_bound));
}

#[test]
fn identical_runs_identical_bytes() {
    for args in [
        &["construct", "--n", "14", "--h", "5", "--g", "5", "--coords"][..],
        &["triangulate", "--random", "30", "--seed", "11"],
        &["oracle", "--random", "7", "--seed", "5", "--g", "3"],
        &["hull", "--random", "40", "--seed", "2"],
    ] {
        assert_eq!(ok(args, None), ok(args, None), "{args:?}");
    }
    let graph = ok(
        &["construct", "--n", "11", "--h", "5", "--g", "5", "--coords"],
        None,
    );
    assert_eq!(ok(&["render"], Some(&graph)), ok(&["render"], Some(&graph)));
}

#[test]
fn graph_output_round_trips() {
    let graph = ok(
        &["construct", "--n", "20", "--h", "3", "--g", "3", "--coords"],
        None,
    );
    let doc: GraphDoc = serde_json::from_str(&graph).unwrap();
    let again = PlaneGraph::from_doc(&doc).unwrap().to_doc();
    assert_eq!(doc, again);
    let reparsed: Value = serde_json::from_str(&graph).unwrap();
    assert_eq!(reparsed, serde_json::to_value(&again).unwrap());
}

#[test]
fn validation_errors_exit_two() {
    let cases: [(&[&str], Option<&str>); 7] = [
        (&["bound", "--n", "6", "--g", "3", "--bogus"], None),
        (&["bound", "--n", "6", "--g", "3"], None),
        (&["bound", "--n", "6", "--g", "4", "--h", "3"], None),
        (&["construct", "--n", "7", "--h", "5", "--g", "4"], None),
        (&["triangulate", "--random", "10"], None),
        (&["recognize"], Some("not json")),
        (
            &["render"],
            Some(r#"{"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}"#),
        ),
    ];
    for (args, stdin) in cases {
        let out = run(args, stdin);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = run(&["bound", "--n", "6", "--g", "3", "--bogus"], None);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--bogus"));
}
