use std::path::PathBuf;
use std::process::{Command, Output};

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invbasis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn poly_lines(out: &Output) -> Vec<String> {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    text.lines()
        .skip_while(|l| !l.starts_with("polys:"))
        .skip(1)
        .map(str::to_string)
        .collect()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("invbasis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn janet_running_example() {
    let path = data("examples/running.ib");
    let out = run(&["janet", path.to_str().unwrap(), "--stable-stats"]);
    assert!(out.status.success());
    assert_eq!(
        poly_lines(&out),
        ["x1*x2", "x1*x3^2", "x1^2*x3", "x1^2*x2"]
    );
}

#[test]
fn pommaret_quasi_stable_example() {
    let path = data("examples/quasistable.ib");
    let out = run(&["pommaret", path.to_str().unwrap(), "--stable-stats"]);
    assert!(out.status.success());
    assert_eq!(poly_lines(&out).len(), 7);
}

#[test]
fn stats_json_file() {
    let path = data("benchmarks/katsura5.ib");
    let stats = scratch("k5.json", "");
    let out = run(&[
        "janet",
        path.to_str().unwrap(),
        "--stats-json",
        stats.to_str().unwrap(),
        "--stable-stats",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&stats).unwrap()).unwrap();
    assert_eq!(json["schema"], 1);
    assert_eq!(json["algorithm"], "janet");
    assert_eq!(json["basisSize"], 23);
    assert_eq!(json["timeMs"], 0);
    assert_eq!(json["memBytes"], 0);
}

#[test]
fn malformed_input_exits_with_one() {
    let path = scratch("bad.ib", "garbage\n");
    let out = run(&["janet", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn pommaret_cap_exits_with_two_and_partial_basis() {
    let path = scratch("cap.ib", "vars: x y\norder: degrevlex\npolys:\nx*y\n");
    let out = run(&["pommaret", path.to_str().unwrap(), "--degree-cap", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!poly_lines(&out).is_empty());
}

#[test]
fn quasistable_emits_change_log() {
    let path = data("benchmarks/liu.ib");
    let log = scratch("liu-changes.json", "");
    let out = run(&[
        "quasistable",
        path.to_str().unwrap(),
        "--homogenize",
        "--seed",
        "0",
        "--emit-change-log",
        log.to_str().unwrap(),
        "--stable-stats",
    ]);
    assert!(out.status.success());
    let changes: Vec<serde_json::Value> =
        serde_json::from_str(&std::fs::read_to_string(&log).unwrap()).unwrap();
    assert_eq!(changes.len(), 4);
    for c in &changes {
        assert_ne!(c["target"], c["addend"]);
        assert!(c["scalar"].is_string() || c["scalar"].is_number());
    }
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("# change")).count(), 4);
}

#[test]
fn hilbert_subcommand_lists_values() {
    let path = data("examples/running.ib");
    let out = run(&["hilbert", path.to_str().unwrap(), "--upto", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 5);
}

#[test]
fn bench_renders_table_and_csv() {
    let dir = data("benchmarks");
    let md = run(&["bench", dir.to_str().unwrap(), "--stable-stats", "--only", "liu"]);
    assert!(md.status.success());
    let text = String::from_utf8(md.stdout).unwrap();
    assert!(text.starts_with("| system |"));
    assert!(text.contains("| liu | janet |"));

    let csv = run(&[
        "bench",
        dir.to_str().unwrap(),
        "--stable-stats",
        "--only",
        "liu",
        "--format",
        "csv",
    ]);
    assert!(csv.status.success());
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("system,"));
}
