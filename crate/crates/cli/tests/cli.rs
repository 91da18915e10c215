use std::f64::consts::{E, LN_2, PI};
use std::process::Command;

use nev_cli::{run_with, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn nev(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nev").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = nev(args);
    assert_eq!(code, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

#[test]
fn analyze_csv_matches_exponential_characteristic() {
    let (code, out, _) =
        nev(&["analyze", "--fn", "exp(z)", "--targets", "inf,0", "--radii", "0.5:5:0.5", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("r,target,m,n,N,T"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 20);
    let row = rows.iter().find(|r| r[0] == "2" && r[1] == "inf").unwrap();
    assert!((row[2].parse::<f64>().unwrap() - 2.0 / PI).abs() <= 1e-12);
    assert_eq!(row[3], "0");
    assert_eq!(row[4], "0");
    assert!((row[5].parse::<f64>().unwrap() - 2.0 / PI).abs() <= 1e-12);
    for r in &rows {
        let radius: f64 = r[0].parse().unwrap();
        assert!((r[5].parse::<f64>().unwrap() - radius / PI).abs() <= 1e-9);
    }
}

#[test]
fn verify_fft_passes_with_epsilon_below_log_two() {
    let report = json(&["verify", "fft", "--fn", "exp(z)", "--target", "0", "--radius", "2"]);
    assert_eq!(report["command"], "verify");
    let v = &report["verdicts"][0];
    assert_eq!(v["pass"], true);
    assert!(num(&v["details"]["epsilon"]).abs() <= LN_2);
    assert!(report["inputs_echo"].get("workers").is_none());
}

#[test]
fn zalcman_manual_reproduces_limit() {
    let report = json(&[
        "family",
        "zalcman",
        "--family",
        "exp(n*(z-1))/(z+1/n)",
        "--n",
        "10:30",
        "--mode",
        "manual",
        "--zn",
        "-1/n",
        "--rhon",
        "exp(-n)",
        "--w",
        "1,2,i",
    ]);
    let records = report["results"][0]["records"].as_array().unwrap();
    assert_eq!(records.len(), 21);
    let last = &records[20];
    assert_eq!(last["n"], 30);
    let w = [(1.0, 0.0), (2.0, 0.0), (0.0, 1.0)];
    for (g, (wr, wi)) in last["rescaled"].as_array().unwrap().iter().zip(w) {
        let d = wr * wr + wi * wi;
        let (er, ei) = (wr / (E * d), -wi / (E * d));
        assert!((num(&g["re"]) - er).abs() <= 1e-6 && (num(&g["im"]) - ei).abs() <= 1e-6, "{g}");
    }
}

#[test]
fn exit_codes_separate_failures_from_usage_errors() {
    assert_eq!(nev(&["--help"]).0, EXIT_OK);
    assert_eq!(nev(&["--version"]).0, EXIT_OK);
    assert_eq!(nev(&["bogus"]).0, EXIT_USAGE);
    let (code, _, err) = nev(&["analyze", "--fn", "exp(", "--radius", "1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("syntax error"));
    assert_eq!(nev(&["verify", "growth", "--fn", "exp(z)", "--radius", "3", "--big-radius", "2"]).0, EXIT_USAGE);
    assert_eq!(nev(&["verify", "jensen", "--fn", "sin(z)", "--radius", "1"]).0, EXIT_USAGE);
    assert_eq!(nev(&["verify", "fft", "--fn", "exp(z)", "--target", "inf", "--radius", "1"]).0, EXIT_USAGE);
    assert_eq!(nev(&["analyze", "--fn", "z", "--radius", "1", "--radii", "1,2"]).0, EXIT_USAGE);
    assert_eq!(nev(&["analyze", "--fn", "z", "--radius", "1", "--format", "svg"]).0, EXIT_USAGE);
    assert_eq!(nev(&["verify", "jensen", "--fn", "z+1", "--radius", "1", "--format", "csv"]).0, EXIT_USAGE);
    assert_eq!(nev(&["family", "zalcman", "--family", "n*z", "--n", "1:5", "--mode", "manual"]).0, EXIT_USAGE);

    // the convexity sub-check cannot reach a slack of 1e-14
    let (code, out, _) = nev(&["verify", "cartan", "--fn", "z/(1 - z^2)", "--radius", "2", "--abs-tol", "1e-15"]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["verdicts"][0]["pass"], false);
    assert_eq!(nev(&["verify", "cartan", "--fn", "z/(1 - z^2)", "--radius", "2"]).0, EXIT_OK);
}

#[test]
fn every_verify_subcommand_reports_a_verdict_per_radius() {
    let cases: &[&[&str]] = &[
        &["verify", "jensen", "--fn", "(z-0.5)*(z+2)", "--radii", "1,3"],
        &["verify", "cartan", "--fn", "exp(z)", "--radii", "1,3"],
        &["verify", "growth", "--fn", "sin(z)", "--radii", "1,3", "--big-radius", "4"],
        &["verify", "sft", "--fn", "tan(z)", "--targets", "2i,-2i", "--radii", "1,3"],
        &["verify", "nevest", "--fn", "exp(z)", "--radii", "1,3", "--big-radius", "4"],
        &["verify", "arith", "--fn", "exp(z)", "--g", "z^2+1", "--target", "-2", "--radii", "1,3"],
        &["verify", "psi", "--fn", "exp(z+1)", "--alpha", "0.2-0.3i", "--radii", "0.8,1", "--r0", "0.5"],
    ];
    for argv in cases {
        let report = json(argv);
        let verdicts = report["verdicts"].as_array().unwrap();
        assert_eq!(verdicts.len(), 2, "{argv:?}");
        assert!(verdicts.iter().all(|v| v["pass"] == true), "{argv:?}: {report}");
        assert_eq!(num(&verdicts[1]["r"]), if argv[1] == "psi" { 1.0 } else { 3.0 });
    }
}

#[test]
fn divisor_and_order_reports() {
    let report = json(&["divisor", "--fn", "(z-1)^2*(z+2)", "--radius", "3"]);
    let cat = &report["results"][0];
    assert_eq!(cat["exact"], true);
    let entries = cat["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[0]["multiplicity"], 2);

    let (code, out, _) = nev(&["divisor", "--fn", "sin(z)", "--radius", "4", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("kind,re,im,multiplicity"));
    assert_eq!(out.lines().count(), 4);

    let report = json(&["order", "--fn", "exp(z)", "--radii", "2:32:2"]);
    assert!((num(&report["results"][0]["order"]) - 1.0).abs() <= 0.05);
    assert_eq!(nev(&["order", "--fn", "exp(z)", "--radii", "2,3"]).0, EXIT_USAGE);
}

#[test]
fn marty_verdicts_and_csv() {
    let report = json(&["family", "marty", "--family", "n*z", "--n", "1:50"]);
    assert_eq!(report["results"][0]["verdict"], "diverging");
    assert_eq!(report["results"][0]["heuristic"], true);
    let report = json(&["family", "marty", "--family", "z+n", "--n", "1:50"]);
    assert_eq!(report["results"][0]["verdict"], "bounded");
    let (code, out, _) = nev(&["family", "marty", "--family", "n/z", "--n", "1:5", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn plots_are_fixed_size_svg_files() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, extra) in [
        ("characteristic", vec!["--radii", "0.5:3:0.5"]),
        ("stack", vec!["--radii", "0.5:3:0.5", "--target", "0"]),
        ("sharp", vec!["--r0", "2"]),
    ] {
        let path = dir.path().join(format!("{kind}.svg"));
        let path_text = path.to_str().unwrap();
        let mut argv = vec!["plot", "--kind", kind, "--fn", "(exp(z)-2)/(z^2+4)", "--output", path_text];
        argv.extend(extra);
        let (code, out, err) = nev(&argv);
        assert_eq!(code, EXIT_OK, "{err}");
        assert!(out.is_empty());
        let svg = std::fs::read_to_string(&path).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains(r#"width="800" height="600""#));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
    assert_eq!(nev(&["plot", "--kind", "stack", "--fn", "z"]).0, EXIT_USAGE);
}

#[test]
fn environment_tolerance_is_honoured() {
    let bin = env!("CARGO_BIN_EXE_nev");
    let out = Command::new(bin)
        .args(["analyze", "--fn", "exp(z)", "--radius", "1"])
        .env("NEV_ABS_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(num(&report["inputs_echo"]["abs_tol"]), 1e-6);

    let out = Command::new(bin)
        .args(["analyze", "--fn", "exp(z)", "--radius", "1", "--abs-tol", "1e-10"])
        .env("NEV_ABS_TOL", "1e-6")
        .output()
        .unwrap();
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(num(&report["inputs_echo"]["abs_tol"]), 1e-10);

    let out = Command::new(bin)
        .args(["analyze", "--fn", "exp(z)", "--radius", "1"])
        .env("NEV_ABS_TOL", "tight")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NEV_ABS_TOL"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let argv = ["analyze", "--fn", "tan(z)", "--targets", "inf,0,2i", "--radii", "1,2,3.5"];
    let (_, a, _) = nev(&argv);
    let (_, b, _) = nev(&argv);
    assert_eq!(a, b);
}
