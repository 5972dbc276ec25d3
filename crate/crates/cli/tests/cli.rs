use std::io::Write as _;
use std::path::Path;

use collin_core::io::ReportDocument;
use collin_core::tables::{parse_grid, Factor};
use collin_core::adjustment_factors;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = collin_cli::run(std::iter::once("collin").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_csv(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path.to_str().unwrap().to_string()
}

fn sample_csv(rows: usize) -> String {
    let mut s = String::from("y,x1,x2,x3\n");
    let mut state = 17u64;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
    };
    for _ in 0..rows {
        let (a, b, c) = (next(), next(), next());
        let y = 1.0 + 3.0 * a + 0.1 * b + next();
        s.push_str(&format!("{y},{a},{b},{}\n", a + 0.3 * c));
    }
    s
}

#[test]
fn tables_a_first_cell() {
    let (code, out, _) = run(&["tables", "--what", "a"]);
    assert_eq!(code, 0);
    let row15 = out.lines().nth(1).unwrap();
    let cells: Vec<&str> = row15.split_whitespace().collect();
    assert_eq!(cells[0], "15");
    assert_eq!(cells[1], "0.929");
}

#[test]
fn tables_parse_back_to_factors() {
    for (what, factor) in [("a", Factor::A), ("b", Factor::B), ("sqrt-a", Factor::SqrtA)] {
        let (code, out, _) = run(&["tables", "--what", what]);
        assert_eq!(code, 0);
        let g = parse_grid(&out, factor).unwrap();
        assert_eq!(g.ns.len(), 38);
        assert_eq!(g.ks, (3..=15).collect::<Vec<_>>());
        for (n, row) in g.ns.iter().zip(&g.values) {
            for (k, v) in g.ks.iter().zip(row) {
                let f = adjustment_factors(*n, *k).unwrap();
                let want = match factor {
                    Factor::A => f.a,
                    Factor::B => f.b,
                    Factor::SqrtA => f.sqrt_a,
                };
                assert!((v - want).abs() <= 1e-3, "{what} ({n},{k}): {v} vs {want}");
            }
        }
    }
}

#[test]
fn diagnose_single_predictor_has_unit_vif_and_avif() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_csv(dir.path(), "two.csv", "y,x\n1.0,2\n2.5,1\n4.0,5\n3.0,3\n6.0,4\n");
    let (code, out, err) = run(&["diagnose", &path, "--response", "y"]);
    assert_eq!(code, 0, "{err}");
    let doc = ReportDocument::from_json(&out).unwrap();
    assert_eq!(doc.collinearity.vif["x"], 1.0);
    assert_eq!(doc.collinearity.avif["x"], 1.0);
    assert_eq!(doc.decisions.len(), 2);
}

#[test]
fn diagnose_is_byte_identical_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_csv(dir.path(), "d.csv", &sample_csv(40));
    let (c1, o1, _) = run(&["diagnose", &path, "--response", "y", "--alpha", "0.1"]);
    let (c2, o2, _) = run(&["diagnose", &path, "--response", "y", "--alpha", "0.1"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(o1, o2);
    let doc = ReportDocument::from_json(&o1).unwrap();
    assert_eq!(doc.to_json().unwrap() + "\n", o1);
    assert_eq!(doc.fit.k, 4);
}

#[test]
fn select_runs_both_directions() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_csv(dir.path(), "d.csv", &sample_csv(60));
    for dir_flag in ["backward", "forward"] {
        for rule in ["classic", "adjusted"] {
            let (code, out, err) = run(&["select", &path, "--response", "y", "--rule", rule, "--direction", dir_flag]);
            assert_eq!(code, 0, "{err}");
            let doc = ReportDocument::from_json(&out).unwrap();
            let trace = doc.selection.unwrap();
            assert!(trace.selected.contains(&"x1".to_string()) || trace.selected.contains(&"x3".to_string()));
        }
    }
}

#[test]
fn gamma_simulation_lands_in_band() {
    let args = ["simulate", "--design", "gamma", "--n", "25", "--gamma", "0.95", "--seed", "7"];
    let (code, out, err) = run(&args);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let k = v["threshold_k"].as_u64().unwrap();
    assert!((3..=4).contains(&k), "threshold_k = {k}");
    assert_eq!(run(&args).1, out);
}

#[test]
fn replicated_simulation_reports_median() {
    let (code, out, _) = run(&[
        "simulate", "--design", "indep", "--n", "30", "--seed", "2", "--measure", "avif", "--replicates", "4",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["threshold_k"].as_array().unwrap().len(), 4);
    assert!(v.get("median_threshold_k").is_some());
}

#[test]
fn figures_emit_series_csv() {
    let (code, out, _) = run(&["figures", "--n", "50", "--seed", "11"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("k,max_vif,max_avif"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 38);
    assert_eq!(rows[0][0], 3.0);
    assert_eq!(rows.last().unwrap()[0], 40.0);
    assert!(rows.iter().all(|r| r[2] <= r[1]));
}

#[test]
fn example_runs() {
    let (code, out, err) = run(&["example", "--seed", "5"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["initial_fit"]["k"], 35);
}

#[test]
fn usage_errors_exit_one() {
    let (code, _, err) = run(&["tables", "--what", "c"]);
    assert_eq!(code, 1);
    assert!(err.contains("--what"));
    let (code, _, err) = run(&["diagnose", "x.csv"]);
    assert_eq!(code, 1);
    assert!(err.contains("--response"));
    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!(code, 1);
    assert!(err.contains("frobnicate"));
    let (code, _, err) = run(&["simulate", "--design", "indep", "--n", "50", "--seed", "1", "--replicates", "0"]);
    assert_eq!(code, 1);
    assert!(err.contains("--replicates"));
}

#[test]
fn data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_csv(dir.path(), "bad.csv", "y,x\n1,2\n2,abc\n3,4\n4,1\n");
    let (code, _, err) = run(&["diagnose", &bad, "--response", "y"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    let (code, _, _) = run(&["diagnose", &bad, "--response", "missing"]);
    assert_eq!(code, 2);

    let collinear = write_csv(dir.path(), "c.csv", "y,a,b\n1,1,2\n2,2,4\n3,3,6\n5,4,8\n4,5,10\n");
    let (code, _, _) = run(&["diagnose", &collinear, "--response", "y"]);
    assert_eq!(code, 2);

    let (code, _, err) = run(&["diagnose", "/nonexistent/file.csv", "--response", "y"]);
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent/file.csv"));

    let (code, _, _) = run(&["simulate", "--design", "example", "--n", "30", "--seed", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_collin");
    let ok = std::process::Command::new(bin).args(["tables", "--what", "b"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = std::process::Command::new(bin).args(["tables"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(1));
    let threads = std::process::Command::new(bin)
        .env("COLLIN_THREADS", "2")
        .args(["figures", "--n", "40", "--seed", "3"])
        .output()
        .unwrap();
    assert_eq!(threads.status.code(), Some(0));
    let single = std::process::Command::new(bin)
        .env("COLLIN_THREADS", "1")
        .args(["figures", "--n", "40", "--seed", "3"])
        .output()
        .unwrap();
    assert_eq!(threads.stdout, single.stdout);
    let bad = std::process::Command::new(bin)
        .env("COLLIN_THREADS", "zero")
        .args(["tables", "--what", "a"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
