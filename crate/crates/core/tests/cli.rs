use std::process::{Command, Output};

use approx::assert_relative_eq;
use serde_json::Value;

fn kdbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kdbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const HELP_PATHS: [&str; 16] = [
    "",
    "spline",
    "spline build",
    "spline verify",
    "constants",
    "constants dump",
    "bound",
    "bound compute",
    "bound target",
    "bound mvn",
    "bound pair",
    "validate",
    "validate urn",
    "validate clt",
    "validate nazarov",
    "validate mvn-disc",
];

#[test]
fn help_text_matches_golden() {
    let mut text = String::new();
    for path in HELP_PATHS {
        let mut args: Vec<&str> = path.split_whitespace().collect();
        args.push("--help");
        let out = kdbound(&args);
        assert_eq!(out.status.code(), Some(0), "{path}");
        text.push_str(&format!(
            "$ {}\n",
            ["kdbound"].iter().chain(&args).copied().collect::<Vec<_>>().join(" ")
        ));
        text.push_str(&String::from_utf8(out.stdout).unwrap());
        text.push('\n');
    }
    assert_eq!(text, include_str!("golden/help.txt"));
}

#[test]
fn bounded_example_prints_shortest_decimals() {
    let out = kdbound(&[
        "bound",
        "compute",
        "--profile",
        "bounded",
        "--m",
        "1",
        "--dm",
        "0.005",
        "--A",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["formula_id"], "bounded-strict");
    assert_eq!(doc["bound"], "0.1");
    assert_eq!(doc["alpha"], "0.1");
    assert_eq!(doc["valid"], true);
}

#[test]
fn usage_errors_exit_one() {
    let bad_exponent = kdbound(&[
        "bound",
        "compute",
        "--profile",
        "power",
        "--m",
        "1",
        "--dm",
        "1e-3",
        "--A",
        "1",
        "--a",
        "1.5",
    ]);
    assert_eq!(bad_exponent.status.code(), Some(1));
    assert!(bad_exponent.stdout.is_empty());
    assert!(String::from_utf8_lossy(&bad_exponent.stderr).starts_with("error:"));

    assert_eq!(
        kdbound(&["bound", "compute", "--profile", "bounded"]).status.code(),
        Some(1)
    );
    assert_eq!(
        kdbound(&["spline", "build", "--m", "3", "--frobnicate"]).status.code(),
        Some(1)
    );
    assert_eq!(
        kdbound(&[
            "bound",
            "compute",
            "--profile",
            "cubic",
            "--m",
            "1",
            "--dm",
            "1e-3",
            "--A",
            "1"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(kdbound(&["spline", "build", "--m", "0"]).status.code(), Some(1));
}

#[test]
fn spline_certification() {
    let out = kdbound(&["spline", "verify", "--m", "5", "--tol", "1e-10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["pass"], true);

    let built = kdbound(&["spline", "build", "--m", "3"]);
    assert_eq!(built.status.code(), Some(0));
    let mut doc = stdout_json(&built);
    let dir = std::env::temp_dir().join(format!("kdbound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let good = dir.join("good.json");
    std::fs::write(&good, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = kdbound(&["spline", "verify", "--m", "3", "--input", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let last = doc["pieces"].as_array().unwrap().len() - 1;
    doc["pieces"][last][0] = Value::String("2.5e-1".into());
    let bad = dir.join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = kdbound(&["spline", "verify", "--m", "3", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["pass"], false);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn beta_target_reports_both_bounds() {
    let out = kdbound(&[
        "bound", "target", "--kind", "beta", "--alpha", "2", "--beta", "3", "--m", "2", "--dm", "1e-4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let ids: Vec<String> = stdout_json(&out)
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["formula_id"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids.len(), 2);
    assert_eq!(ids[1], "beta-universal");
}

#[test]
fn urn_csv_schema() {
    let out = kdbound(&["validate", "urn", "--n", "10,100", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("experiment,params,n,dm_input,alpha,bound,exact_dK,margin,valid")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    for row in rows {
        let margin: f64 = row.split(',').nth(7).unwrap().parse().unwrap();
        assert!(margin > 0.0);
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("kdbound-out-{}.json", std::process::id()));
    let out = kdbound(&["constants", "dump", "--m", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    let rows = doc.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let favard: f64 = rows[0]["favard"].as_str().unwrap().parse().unwrap();
    assert_relative_eq!(favard, std::f64::consts::FRAC_PI_2, max_relative = 1e-12);
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = [
        "validate",
        "clt",
        "--dist",
        "uniform",
        "--n",
        "25,100",
        "--samples",
        "2000",
        "--seed",
        "7",
    ];
    let first = kdbound(&args);
    let second = kdbound(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let other = kdbound(&[
        "validate",
        "clt",
        "--dist",
        "uniform",
        "--n",
        "25,100",
        "--samples",
        "2000",
        "--seed",
        "8",
    ]);
    assert_ne!(first.stdout, other.stdout);
}
