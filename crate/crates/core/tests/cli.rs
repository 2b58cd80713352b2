use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_padic-hypergeo"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gn_prints_recovered_integer() {
    let o = run(&[
        "gn", "--p", "7", "--r", "1", "--top", "1/4,3/4", "--bottom", "0,1/2", "--t", "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("0"));
}

#[test]
fn gn_matches_cubic_root_count() {
    // roots of y^3 - 3y + 1 over F_5, minus one
    let roots = (0..5)
        .filter(|y| (y * y * y - 3 * y + 1i64).rem_euclid(5) == 0)
        .count() as i64;
    let o = run(&[
        "gn", "--p", "5", "--r", "1", "--top", "1/3,2/3", "--bottom", "0,1/2", "--t", "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().last(),
        Some((roots - 1).to_string().as_str())
    );
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&[
        "gn", "--p", "3", "--r", "1", "--top", "1/6,1/2", "--bottom", "0,0", "--t", "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("divisible by p"));
    assert_eq!(run(&["gn", "--p", "7"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--suite", "thm-9.9"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--suite", "gk", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["count", "ec", "--p", "4", "--a4", "1", "--a6", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn counts() {
    let o = run(&[
        "count", "dsurface", "--p", "5", "--r", "1", "--d", "2", "--k", "1", "--lambda", "1",
    ]);
    assert!(stdout(&o).contains("projective=1 "));
    let o = run(&[
        "count", "ec", "--p", "5", "--r", "1", "--a4", "1", "--a6", "0",
    ]);
    assert!(stdout(&o).trim_end().ends_with("points=4 a_q=2"));
    let mut affine = 0;
    for x in 0..5i64 {
        for y in 0..5i64 {
            affine += i32::from((x * x * x + y * y * y + 1 - 6 * x * y).rem_euclid(5) == 0);
        }
    }
    let o = run(&["count", "hessian", "--p", "5", "--r", "1", "--a", "2"]);
    assert!(stdout(&o).contains(&format!("affine={affine} ")));
}

#[test]
fn verify_thm19_rows() {
    let o = run(&[
        "verify", "--suite", "thm-1.9", "--pmax", "11", "--rmax", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows: Vec<(String, String)> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["params"]["p"].as_str().unwrap().to_string(),
                r["status"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    for (p, want) in [("5", "pass"), ("7", "skip"), ("11", "pass")] {
        assert!(
            rows.contains(&(p.to_string(), want.to_string())),
            "{rows:?}"
        );
    }
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn verify_writes_filtered_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gk.csv");
    let o = run(&[
        "verify",
        "--suite",
        "gk",
        "--pmax",
        "7",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("id,params,status"));
    assert!(lines.all(|l| l.starts_with("gk,")));
}

#[test]
fn thread_count_does_not_change_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let mut outs = Vec::new();
    for threads in ["1", "3"] {
        let path = dir.path().join(format!("r{threads}.json"));
        let o = bin()
            .args([
                "verify",
                "--suite",
                "lemma-2,thm-1.8,cor-5",
                "--pmax",
                "11",
                "--out",
                path.to_str().unwrap(),
            ])
            .env("PADIC_HYPERGEO_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        outs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
}

#[test]
fn timings_are_opt_in() {
    let plain = run(&["verify", "--suite", "phi-sum", "--pmax", "7"]);
    assert!(!stdout(&plain).contains("wall_ms"));
    let timed = run(&["verify", "--suite", "phi-sum", "--pmax", "7", "--timings"]);
    assert!(stdout(&timed).contains("wall_ms"));
}

#[test]
fn full_suite_on_the_documented_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&[
        "verify",
        "--suite",
        "all",
        "--pmax",
        "13",
        "--rmax",
        "2",
        "--dmax",
        "6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["summary"]["pass"].as_u64().unwrap() > 10_000);
}
