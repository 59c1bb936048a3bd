//! End-to-end checks of the `mcs` binary: exit codes, JSON reports,
//! generator determinism and SVG output.

use std::process::Command;

fn mcs() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mcs"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = mcs().args(args).output().expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn gen_is_deterministic_and_solvable() {
    let dir = std::env::temp_dir().join("mcs-cli-test-gen");
    std::fs::create_dir_all(&dir).unwrap();
    let (a, _, code) = run(&["gen", "--class", "two-lines", "--n", "10", "--seed", "7"]);
    assert_eq!(code, 0);
    let (b, _, _) = run(&["gen", "--class", "two-lines", "--n", "10", "--seed", "7"]);
    assert_eq!(a, b, "same seed, same bytes");

    let file = dir.join("inst.txt");
    std::fs::write(&file, &a).unwrap();
    let (stdout, _, code) = run(&["solve", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["algo"], "two-lines");
    assert_eq!(report["verified"], true);
    assert!(report["size"].as_u64().unwrap() >= 1);
    assert!(report["elapsed_ms"].as_f64().is_some());
}

#[test]
fn solve_reports_json_and_svg() {
    let dir = std::env::temp_dir().join("mcs-cli-test-svg");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("pair.txt");
    std::fs::write(&file, "general\n0 0 0\n1 0 1\n").unwrap();
    let svg = dir.join("out.svg");
    let (stdout, _, code) = run(&[
        "solve",
        file.to_str().unwrap(),
        "--algo",
        "brute",
        "--svg",
        svg.to_str().unwrap(),
        "--voronoi",
    ]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["size"], 2);
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(svg_text.matches("<circle").count(), 4);
}

#[test]
fn verify_subcommand() {
    let dir = std::env::temp_dir().join("mcs-cli-test-verify");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("inst.txt");
    std::fs::write(&file, "general\n0 0 0\n9 0 1\n10 0 1\n").unwrap();
    let (stdout, _, code) = run(&["verify", file.to_str().unwrap(), "--subset", "0,1"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["verified"], true);
    let (stdout, _, _) = run(&["verify", file.to_str().unwrap(), "--subset", "0"]);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["verified"], false);
}

#[test]
fn parse_errors_exit_two() {
    let dir = std::env::temp_dir().join("mcs-cli-test-err");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("bad.txt");
    std::fs::write(&file, "collinear\n0 0 0\n1 1 0\n2 3 1\n").unwrap();
    let (_, stderr, code) = run(&["solve", file.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));
}

#[test]
fn xcheck_runs_clean() {
    for algo in ["collinear", "two-lines", "one-red", "pair2", "cone"] {
        let (stdout, _, code) = run(&[
            "xcheck", "--algo", algo, "--seeds", "8", "--n", "8", "--seed-base", "42",
        ]);
        assert_eq!(code, 0, "algo {algo}: {stdout}");
        let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(report["mismatches"], 0, "algo {algo}");
    }
}

#[test]
fn bench_emits_timings() {
    let (stdout, _, code) = run(&["bench", "--sizes", "1000,2000"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 2);
}
