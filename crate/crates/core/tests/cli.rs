//! End-to-end runs of the `descm` binary.

#![allow(clippy::excessive_precision, clippy::needless_range_loop)]

use std::process::{Command, Output};

use serde_json::Value;

fn descm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_descm"))
        .args(args)
        .env_remove("DESCM_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn marker(text: &str, name: &str) -> f64 {
    let prefix = format!("# {name}=");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("missing {name} marker"))
        .parse()
        .unwrap()
}

#[test]
fn solve_quartic_json() {
    let o = descm(&["solve", "--potential", "poly:1,1", "--N", "17", "--levels", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let e0 = v["eigenvalues"][0].as_f64().unwrap();
    assert!((e0 - 1.3923516415352821).abs() < 5e-12);
    assert_eq!(v["N"], 17);
    assert_eq!(v["strategy"], "optimal");
}

#[test]
fn solve_octic_three_levels() {
    // the reference row labelled N = 12 is reproduced at N = 20
    let o = descm(&["solve", "--potential", "poly:1,0,0,100", "--N", "20", "--levels", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let e = &json(&o)["eigenvalues"];
    assert!((e[2].as_f64().unwrap() - 26.0334583214430).abs() < 1e-9);
    assert_eq!(e.as_array().unwrap().len(), 3);
}

#[test]
fn malformed_spec_exits_two() {
    for args in [
        vec!["solve", "--potential", "poly:"],
        vec!["solve", "--potential", "poly:", "--N", "5"],
        vec!["solve", "--potential", "quux:3", "--N", "5"],
        vec!["converge", "--potential", "poly:1,x"],
        vec!["trace-scan", "--potential", "poly:1,1", "--N", "0"],
        vec!["converge", "--potential", "poly:1,1", "--tolerance", "-1"],
        vec![
            "trace-scan",
            "--potential",
            "poly:1,1",
            "--N",
            "5",
            "--h-min",
            "2",
            "--h-max",
            "1",
        ],
    ] {
        let o = descm(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn converge_first_quartic_row() {
    let o = descm(&["converge", "--potential", "poly:0.1,0.1", "--level", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("N,h,E_n,eps_n"));
    let rows = csv_rows(&text);
    let last = rows.last().unwrap();
    let n: usize = last[0].parse().unwrap();
    let e: f64 = last[2].parse().unwrap();
    let eps: f64 = last[3].parse().unwrap();
    assert!(n.abs_diff(20) <= 3);
    assert!((e - 0.56694532770815997).abs() < 5e-11);
    assert!(eps < 5e-12);
    // first row has no predecessor
    assert_eq!(rows[0][3], "");
    assert_eq!(rows[0][0], "2");
}

#[test]
fn converge_deep_decic_well() {
    let o = descm(&["converge", "--potential", "poly:-10,-10,-10,-10,10", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["converged"], true);
    assert!((v["E_n"].as_f64().unwrap() + 22.446238129792420).abs() < 1e-9);
    assert!(v["N"].as_u64().unwrap().abs_diff(52) <= 5);
}

#[test]
fn converge_ten_well_with_trace_minimised_mesh() {
    let o = descm(&[
        "converge",
        "--potential",
        "cheb:20;shift=-1",
        "--level",
        "0",
        "--mesh",
        "trace-min",
        "--n-max",
        "1000",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["converged"], true);
    assert!(v["eps_n"].as_f64().unwrap() < 5e-12);
    assert!((v["E_n"].as_f64().unwrap() - 1.11932909690).abs() < 1e-9);
}

#[test]
fn converge_not_converged_still_emits_trace() {
    let o = descm(&["converge", "--potential", "poly:1,1", "--n-max", "8"]);
    assert_eq!(o.status.code(), Some(3));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 7);
    assert_eq!(rows.last().unwrap()[0], "8");
}

#[test]
fn trace_scan_matches_minimiser() {
    let o = descm(&[
        "trace-scan",
        "--potential",
        "poly:1,-4,1",
        "--N",
        "20",
        "--points",
        "200",
        "--h-min",
        "0.01",
        "--h-max",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("h,trace"));
    let rows: Vec<(f64, f64)> = csv_rows(&text)
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect();
    assert_eq!(rows.len(), 200);
    let h_hat = marker(&text, "h_hat");
    let h_opt = marker(&text, "h_opt");
    assert!(h_opt > 0.0);

    let i_min = (0..rows.len())
        .min_by(|&a, &b| rows[a].1.total_cmp(&rows[b].1))
        .unwrap();
    let i_hat = rows.partition_point(|r| r.0 < h_hat);
    assert!(i_hat.abs_diff(i_min) <= 2, "scan min at {i_min}, h_hat at {i_hat}");
    assert!(rows[0].1 > rows[i_min].1 && rows[199].1 > rows[i_min].1);
}

#[test]
fn validate_default_and_single_case() {
    let o = descm(&["validate", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.last().unwrap() == "pass"));

    let o = descm(&["validate", "--case", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 2);
    assert!(cases.iter().all(|c| c["name"] == "V3"));
}

#[test]
fn validate_failure_names_case() {
    // far too coarse to meet the tolerances
    let o = descm(&["validate", "--N", "5", "--case", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("V1"));
}

#[test]
fn table_presets_reproduce_reference_columns() {
    let o = descm(&["table", "--id", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("N,h,E0,E1,E2,ref_E0,ref_E1,ref_E2"));
    for r in csv_rows(&text) {
        let v: Vec<f64> = r[2..].iter().map(|x| x.parse().unwrap()).collect();
        for i in 0..3 {
            assert!((v[i] - v[i + 3]).abs() < 5e-12, "N={} level {i}", r[0]);
        }
    }

    let o = descm(&["table", "--id", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    for row in json(&o)["rows"].as_array().unwrap() {
        assert_eq!(row["converged"], true);
        assert!((row["E0"].as_f64().unwrap() - row["reference_E0"].as_f64().unwrap()).abs() < 1e-10);
        assert!(
            row["N"]
                .as_u64()
                .unwrap()
                .abs_diff(row["reference_N"].as_u64().unwrap())
                <= 1
        );
    }
}

#[test]
fn output_is_deterministic_and_can_go_to_file() {
    let args = [
        "converge",
        "--potential",
        "cheb:10;shift=-1",
        "--mesh",
        "trace-min",
        "--format",
        "json",
    ];
    let a = descm(&args);
    let b = descm(&args);
    assert_eq!(a.stdout, b.stdout);

    let threaded = Command::new(env!("CARGO_BIN_EXE_descm"))
        .args(args)
        .env("DESCM_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(a.stdout, threaded.stdout);

    let dir = std::env::temp_dir().join(format!("descm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let mut with_output = args.to_vec();
    with_output.extend(["--output", path.to_str().unwrap()]);
    let c = descm(&with_output);
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn matrix_dump_and_timing() {
    let dir = std::env::temp_dir().join(format!("descm-dump-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.txt");
    let o = descm(&[
        "solve",
        "--potential",
        "poly:1",
        "--N",
        "3",
        "--mesh",
        "fixed",
        "--h",
        "0.5",
        "--dump-matrix",
        path.to_str().unwrap(),
        "--timing",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("wall_time_s="));
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 7);
    for i in 0..7 {
        for j in 0..7 {
            assert_eq!(rows[i][j], rows[j][i]);
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
