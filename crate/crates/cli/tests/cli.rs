use std::process::{Command, Output};

use serde_json::Value;

fn copart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_copart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_odd_size_has_equal_parity_classes() {
    let o = copart(&["count", "--a", "1", "--b", "1", "--m", "2", "--n", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(1,1,2) n=7 cp=12 cp^e=6 cp^o=6\n");
}

#[test]
fn count_range_csv() {
    let o = copart(&["count", "--n", "0", "--to", "3", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "a,b,m,n,cp,cp_even,cp_odd\n1,1,2,0,1,1,0\n1,1,2,1,2,1,1\n1,1,2,2,2,2,0\n1,1,2,3,4,2,2\n"
    );
}

#[test]
fn count_over_by_r() {
    let o = copart(&["count", "--n", "1", "--over", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,r,count\n1,0,2\n1,1,2\n");
}

#[test]
fn phi_trace_matches_worked_example() {
    let o = copart(&[
        "phi",
        "--a",
        "1",
        "--b",
        "1",
        "--m",
        "2",
        "--ground",
        "9,9,9,9,5,5,3",
        "--sky",
        "5,5,3",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "f: (7,7,7,6,6,4,4,4,4) | (19,19,17) -> (7,7,6,4,4,4,4) | (19,19,17,13)"
    );
    assert_eq!(lines.iter().filter(|l| l.starts_with("f: ")).count(), 3);
    assert!(out.contains("copartition: ground (3,3,3,3), rho (8,8,8,8,8,8), sky (11,11,9,5,5,3)"));
}

#[test]
fn psi_json_trace() {
    let o = copart(&[
        "phi",
        "--pair",
        "--sky",
        "13,13,9,7,3,3",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["map"], "psi");
    assert_eq!(v["end"], "terminal");
    assert_eq!(v["steps"], 6);
    assert_eq!(v["trace"][1]["step"], "g");
    assert_eq!(
        v["result"]["pair"]["gamma"],
        serde_json::json!([11, 11, 7, 7, 3, 3, 2, 2, 2])
    );
}

#[test]
fn verify_remark_passes() {
    let o = copart(&["verify", "remark", "--order", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn verify_json_reports() {
    let o = copart(&["verify", "thm5", "--order", "10", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    for r in v.as_array().unwrap() {
        assert!(r["mismatch"].is_null());
        assert_eq!(r["orderVerified"], 10);
    }
}

#[test]
fn scan_divisible_grid_is_clean() {
    let o = copart(&[
        "scan",
        "--conjecture",
        "1",
        "--max-a",
        "6",
        "--max-b",
        "6",
        "--max-m",
        "6",
        "--order",
        "120",
        "--filter-divisibility",
        "--format",
        "csv",
        "--jobs",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("a,b,m,N,M,order,first_negative_n,first_negative_value")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 84);
    assert!(rows.iter().all(|r| r.ends_with(",,")));
}

#[test]
fn scan_output_is_deterministic() {
    let args = [
        "scan",
        "--conjecture",
        "2",
        "--max-a",
        "2",
        "--max-b",
        "1",
        "--max-m",
        "3",
        "--filter-divisibility",
        "--max-big-n",
        "4",
        "--max-big-m",
        "4",
        "--include-outside",
        "--format",
        "json",
    ];
    let a = copart(&args);
    let b = copart(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["inScopeNegatives"], 0);
    let outside: Vec<&Value> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["inScope"] == false)
        .collect();
    assert!(outside
        .iter()
        .all(|r| r["params"]["N"].as_u64() > r["params"]["M"].as_u64()));
    assert!(outside.iter().any(|r| !r["firstNegative"].is_null()));
}

#[test]
fn series_output_to_file() {
    let dir = std::env::temp_dir().join(format!("copart-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.json");
    let o = copart(&[
        "series",
        "finite",
        "--order",
        "6",
        "--big-n",
        "1",
        "--big-m",
        "1",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["order"], 6);
    assert_eq!(
        v["coeffs"],
        serde_json::json!(["1", "0", "2", "0", "2", "0", "2"])
    );
}

#[test]
fn diagram_draws_residue_cell_first() {
    let o = copart(&["diagram", "--partition", "9,5,5,1", "--m", "4"]);
    assert_eq!(stdout(&o), "1 4 4\n1 4\n1 4\n1\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(copart(&["count"]).status.code(), Some(2));
    assert_eq!(copart(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        copart(&["phi", "--a", "1", "--b", "2", "--m", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(copart(&["phi", "--ground", "2"]).status.code(), Some(2));
    assert_eq!(
        copart(&["scan", "--conjecture", "3"]).status.code(),
        Some(2)
    );
}
