//! CLI behavior: formats round-trip, deterministic outputs, exit codes.

use std::process::Command;

use orthobend::format::{parse_graph, serialize_graph};
use orthobend_core::gen::{generate_sp, GeneratorSpec};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orthobend"))
}

fn fixture(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn parse_examples() {
    // Smallest cycle: two faces, all degrees two.
    let square = r#"{
        "vertices": [1, 2, 3, 4],
        "edges": [
            {"id": 1, "u": 1, "v": 2}, {"id": 2, "u": 2, "v": 3},
            {"id": 3, "u": 3, "v": 4}, {"id": 4, "u": 4, "v": 1}
        ],
        "rotation": {"1": [4, 1], "2": [1, 2], "3": [2, 3], "4": [3, 4]},
        "external_face_edge": {"edge": 1, "side": "right"}
    }"#;
    let g = parse_graph(square).unwrap();
    assert_eq!(g.face_count(), 2);
    assert!((0..4).all(|v| g.degree(v) == 2));

    // A single edge has one face.
    let edge = r#"{
        "vertices": [1, 2],
        "edges": [{"id": 9, "u": 1, "v": 2}],
        "rotation": {"1": [9], "2": [9]},
        "external_face_edge": {"edge": 9, "side": "left"}
    }"#;
    let g = parse_graph(edge).unwrap();
    assert_eq!(g.face_count(), 1);

    // The worked 11-vertex example parses with its drawn embedding.
    let g = parse_graph(&std::fs::read_to_string(fixture("worked_example.json")).unwrap()).unwrap();
    assert_eq!(g.vertex_count(), 11);
    assert_eq!(g.edge_count(), 15);
    assert_eq!(g.face_count(), 6); // five internal faces plus the external
}

#[test]
fn serialize_round_trip() {
    for seed in 0..60u64 {
        let g = generate_sp(&GeneratorSpec {
            target_vertices: 5 + (seed % 20) as u32,
            seed,
            ..Default::default()
        })
        .unwrap();
        let canon = serialize_graph(&g);
        let g2 = parse_graph(&canon).expect("canonical form parses");
        let canon2 = serialize_graph(&g2);
        assert_eq!(canon, canon2, "seed {seed}: canonical form is a fixed point");
    }
}

#[test]
fn minimize_worked_example() {
    let out = bin().args(["minimize", &fixture("worked_example.json")]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("bends: 5"), "got: {stdout}");
}

#[test]
fn check_square() {
    let dir = tempdir();
    let square = r#"{
        "vertices": [1, 2, 3, 4],
        "edges": [
            {"id": 1, "u": 1, "v": 2}, {"id": 2, "u": 2, "v": 3},
            {"id": 3, "u": 3, "v": 4}, {"id": 4, "u": 4, "v": 1}
        ],
        "rotation": {"1": [4, 1], "2": [1, 2], "3": [2, 3], "4": [3, 4]},
        "external_face_edge": {"edge": 1, "side": "right"}
    }"#;
    let path = dir.join("square.json");
    std::fs::write(&path, square).unwrap();
    let out = bin().args(["check", path.to_str().unwrap()]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("rectilinear: true"), "got: {stdout}");
}

#[test]
fn deterministic_outputs() {
    let run = |args: &[&str]| -> Vec<u8> {
        let out = bin().args(args).output().unwrap();
        assert!(out.status.success(), "{args:?}");
        out.stdout
    };
    let fig = fixture("worked_example.json");
    for args in [
        vec!["gen", "--seed", "11", "-n", "25"],
        vec!["minimize", &fig],
        vec!["draw", &fig, "--format", "svg"],
        vec!["draw", &fig, "--format", "json"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a, b, "byte-identical reruns for {args:?}");
    }
}

#[test]
fn svg_bend_markers() {
    let out = bin().args(["draw", &fixture("worked_example.json"), "--format", "svg"]).output().unwrap();
    assert!(out.status.success());
    let svgtext = String::from_utf8(out.stdout).unwrap();
    let crosses = svgtext.matches("<path d=").count();
    assert_eq!(crosses, 5, "five bend markers");
}

#[test]
fn invalid_input_exit_code() {
    let dir = tempdir();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{}").unwrap();
    let out = bin().args(["check", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_subcommand_agrees() {
    let out = bin()
        .args(["oracle", "--seed", "3", "--count", "40", "--max-n", "24"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("40 instances agree"));
    assert!(stdout.contains("seed=3"), "seed surfaced in the header");
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("orthobend-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn tree_dump_json() {
    let out = bin().args(["check", &fixture("worked_example.json"), "--tree"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json_start = stdout.find('{').unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout[json_start..]).unwrap();
    let nodes = v["nodes"].as_array().unwrap();
    assert!(nodes.iter().any(|n| n["kind"] == "P^r"));
    assert!(nodes.iter().any(|n| n["kind"] == "Q*" && n["chain"].as_array().is_some()));
    assert!(nodes.iter().any(|n| n["node_type"].as_str().unwrap_or("").contains("Pio3")));
}

#[test]
fn non_series_parallel_rejected() {
    // K4 is planar with maximum degree three but not series-parallel.
    let k4 = r#"{
        "vertices": [1, 2, 3, 4],
        "edges": [
            {"id": 12, "u": 1, "v": 2}, {"id": 13, "u": 1, "v": 3},
            {"id": 14, "u": 1, "v": 4}, {"id": 23, "u": 2, "v": 3},
            {"id": 24, "u": 2, "v": 4}, {"id": 34, "u": 3, "v": 4}
        ],
        "rotation": {
            "1": [12, 14, 13],
            "2": [23, 24, 12],
            "3": [13, 34, 23],
            "4": [14, 24, 34]
        },
        "external_face_edge": {"edge": 12, "side": "left"}
    }"#;
    // The embedding itself is valid.
    let g = parse_graph(k4).unwrap();
    assert_eq!(g.face_count(), 4);
    let dir = tempdir();
    let path = dir.join("k4.json");
    std::fs::write(&path, k4).unwrap();
    let out = bin().args(["budget", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("series-parallel"), "got: {err}");
}

#[test]
fn reference_edge_must_be_external() {
    let text = std::fs::read_to_string(fixture("worked_example.json")).unwrap();
    // Edge 4 = (2,4) is interior; naming it as the reference must fail.
    let bad = text.replace("\"reference_edge\": 1", "\"reference_edge\": 4");
    let err = parse_graph(&bad).unwrap_err();
    assert!(format!("{err:#}").contains("external"), "{err:#}");
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let text = std::fs::read_to_string(fixture("worked_example.json")).unwrap();
    let mut child = bin()
        .args(["minimize", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("bends: 5"));
}
