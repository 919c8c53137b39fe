use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_xx-entropy"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

const HEADER: &str = "L,h,alpha,scaled_length,s_exact,s_asymptotic,s_small_block,residual,regime";

#[test]
fn compute_single_site() {
    let o = run(&["compute", "--h", "0", "-L", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(HEADER));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "1");
    assert_eq!(row[4], "0.69314718056");
    assert_eq!(row[8], "largeL");
}

#[test]
fn compute_long_block_residual() {
    let o = run(&["compute", "--h", "0", "--length", "1000", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let residual = v[0]["residual"].as_f64().unwrap();
    assert!(residual.abs() < 2e-3);
    assert_eq!(v[0]["regime"], "largeL");
}

#[test]
fn compute_small_block_negative_field() {
    let o = run(&["compute", "--h", "-1.99", "-L", "1", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["regime"], "smallL");
    let small = v[0]["s_small_block"].as_f64().unwrap();
    let exact = v[0]["s_exact"].as_f64().unwrap();
    assert!((small - exact).abs() < 0.1 * exact);
    assert_eq!(v[0]["h"].as_f64(), Some(-1.99));
}

#[test]
fn domain_error_exit_code() {
    let o = run(&["compute", "--h", "2.5", "-L", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap();
    assert_eq!(err["error"], "domain");
    let o = run(&["compute", "--h", "0", "-L", "4", "--kind", "vn", "--alpha", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["compute", "--h", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_quadrature_tolerance_is_rejected() {
    let o = bin()
        .args(["compute", "--h", "0", "-L", "10"])
        .env("ENTROPY_QUAD_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = bin()
        .args(["compute", "--h", "0", "-L", "10"])
        .env("ENTROPY_QUAD_TOL", "1e-10")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn scan_residual_decreases() {
    let o = run(&["scan", "--h", "0", "-L", "100,200,400", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r: Vec<f64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["residual"].as_f64().unwrap().abs())
        .collect();
    assert_eq!(r.len(), 3);
    assert!(r[0] > r[1] && r[1] > r[2], "{r:?}");
}

#[test]
fn scan_collapse_gives_identical_predictions() {
    // 2·100·1 = 2·125·sqrt(1 − 0.36)
    let o = run(&["scan", "--h", "0,1.2", "-L", "100,125", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    let pick = |l: u64, h: f64| {
        rows.iter()
            .find(|r| r["L"].as_u64() == Some(l) && r["h"].as_f64() == Some(h))
            .unwrap()["s_asymptotic"]
            .as_f64()
            .unwrap()
    };
    assert!((pick(100, 0.0) - pick(125, 1.2)).abs() < 1e-12);
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let args = ["scan", "--h", "-0.5,1.9", "-L", "1,13", "--alpha", "0.5,1,3"];
    let csv = stdout(&run(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json: Value = serde_json::from_str(&stdout(&run(&json_args))).unwrap();
    let rows = json.as_array().unwrap();
    let names: Vec<&str> = HEADER.split(',').collect();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len() - 1, rows.len());
    for (line, row) in lines[1..].iter().zip(rows) {
        for (cell, name) in line.split(',').zip(&names) {
            let j = &row[*name];
            match j {
                Value::Null => assert_eq!(cell, ""),
                Value::String(s) => assert_eq!(cell, s),
                Value::Number(n) => {
                    assert_eq!(cell.parse::<f64>().unwrap(), n.as_f64().unwrap(), "{name}")
                }
                other => panic!("unexpected {other}"),
            }
        }
    }
}

#[test]
fn scan_is_deterministic_across_threads() {
    let base = ["scan", "--h", "0,0.7,-1.3", "-L", "5,60,210", "--alpha", "1,2"];
    let mut one = base.to_vec();
    one.extend(["--threads", "1"]);
    let mut many = base.to_vec();
    many.extend(["--threads", "4"]);
    let a = run(&one).stdout;
    let b = run(&many).stdout;
    let c = run(&many).stdout;
    assert_eq!(a, b);
    assert_eq!(b, c);
}

#[test]
fn scan_writes_to_file_and_reports_row_errors() {
    let dir = std::env::temp_dir().join(format!("xx-entropy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.json");
    let o = run(&[
        "scan",
        "--h",
        "0",
        "-L",
        "3,25000",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[1]["regime"], "error");
    assert!(v[1]["error"].as_str().unwrap().starts_with("size"));
    assert!(v[0].get("error").is_none());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn scan_rejects_critical_field() {
    let o = run(&["scan", "--h", "2", "-L", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn validate_fast_passes() {
    let o = run(&["validate", "--level", "fast"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(text.lines().all(|l| l.starts_with("[PASS]")));
    assert!(text.contains("upsilon1 "));
}
