//! End-to-end runs of the command-line front end.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::Command;

use schwarz_eigen::cli::{run, EXIT_CHECK_FAILED, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};

fn cli(args: &[&str]) -> i32 {
    run(std::iter::once("schwarz-eigen").chain(args.iter().copied()))
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> (i32, String) {
    let out = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let out_str = out.to_str().unwrap().to_owned();
    full.extend(["--output", &out_str]);
    let code = cli(&full);
    (code, fs::read_to_string(&out).unwrap_or_default())
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn sweep_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "sweep",
        "--coeffs",
        "0,1,0.3",
        "--r-start",
        "0.05",
        "--r-end",
        "0.95",
        "--steps",
        "19",
    ];
    let (code, csv) = run_to(dir.path(), "sweep.csv", &args);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "# schema=1");
    assert!(lines.contains(&"# verdict=DECREASING"));
    assert!(lines.contains(
        &"r,lambda,phi,dlambda_hadamard,dlambda_fd,pr_margin,pr_alt_margin,univalent_certified"
    ));
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 19);
    assert_eq!(rows[0][0], "5.0000000000000003e-2");

    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let (code, json) = run_to(dir.path(), "sweep.json", &json_args);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"], "DECREASING");
    let jrows = v["rows"].as_array().unwrap();
    assert_eq!(jrows.len(), 19);
    for (row, j) in rows.iter().zip(jrows) {
        for (k, col) in ["r", "lambda", "phi", "dlambda_hadamard", "dlambda_fd"]
            .iter()
            .enumerate()
        {
            assert_eq!(row[k].parse::<f64>().unwrap(), j[col].as_f64().unwrap());
        }
        assert_eq!(
            row[7] == "true",
            j["univalent_certified"].as_bool().unwrap()
        );
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in [
        vec!["sweep", "--coeffs", "0,1,0.2:0.1", "--steps", "4"],
        vec![
            "payne-rayner",
            "--coeffs",
            "0,1,0.3",
            "--r",
            "0.5,0.8",
            "--format",
            "json",
        ],
        vec!["eigenmetric", "--coeffs", "0,1,0.2"],
    ]
    .iter()
    .enumerate()
    {
        let (c1, a) = run_to(dir.path(), &format!("a{i}"), args);
        let (c2, b) = run_to(dir.path(), &format!("b{i}"), args);
        assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
        assert!(!a.is_empty());
        assert_eq!(a.as_bytes(), b.as_bytes());
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        "coeffs = \"0,1,0.3\"\nr = [0.4, 0.8]\nformat = \"json\"\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let (code, out) = run_to(dir.path(), "pr.json", &["payne-rayner", "--config", cfg]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["map"], "0,1,0.3");
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);

    let (code, out) = run_to(
        dir.path(),
        "pr.csv",
        &[
            "payne-rayner",
            "--config",
            cfg,
            "--format",
            "csv",
            "--r",
            "0.5",
        ],
    );
    assert_eq!(code, EXIT_OK);
    assert!(
        out.contains("r,lambda,L,A,margin,alt_margin,relative_margin,residual1,residual2,holds")
    );
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 1);
    assert!(rows[0][7].parse::<f64>().unwrap() < 1e-6);

    fs::write(dir.path().join("bad.toml"), "bogus-key = 1\n").unwrap();
    let bad = dir.path().join("bad.toml");
    assert_eq!(
        cli(&["sweep", "--config", bad.to_str().unwrap()]),
        EXIT_USAGE
    );
}

#[test]
fn derivative_check_and_eigenmetric_rows() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = run_to(
        dir.path(),
        "d.csv",
        &["derivative-check", "--coeffs", "0,0,1"],
    );
    assert_eq!(code, EXIT_OK);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[7] == "true"));

    let (code, out) = run_to(
        dir.path(),
        "e.csv",
        &["eigenmetric", "--coeffs", "0,1,0.2", "--r", "0.8"],
    );
    assert_eq!(code, EXIT_OK);
    assert!(out.contains(",experimental\n"));
    let rows = data_rows(&out);
    assert_eq!(rows[0][1], "1");
    assert_eq!(rows[0][7], "true");
    let total: f64 = rows[0][5].parse().unwrap();
    assert!((total - 4.0 * PI).abs() < 1e-2);
}

#[test]
fn bessel_disk_plots() {
    let dir = tempfile::tempdir().unwrap();
    let plots = dir.path().join("plots");
    let (code, out) = run_to(
        dir.path(),
        "summary.csv",
        &[
            "bessel-disk",
            "--plot",
            "--plot-dir",
            plots.to_str().unwrap(),
        ],
    );
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("# schema=1\n"));
    for name in ["rho.svg", "curvature.svg", "gauss_bonnet.svg"] {
        let svg = fs::read_to_string(plots.join(name)).unwrap();
        assert!(
            svg.starts_with("<svg") && svg.contains("<polyline"),
            "{name}"
        );
    }
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(plots.join("summary.json")).unwrap()).unwrap();
    let row = &v["rows"][0];
    assert!((row["total_curvature"].as_f64().unwrap() - 4.0 * PI).abs() < 1e-8);
    assert!((row["isoperimetric_ratio"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    let profiles = fs::read_to_string(plots.join("profiles.csv")).unwrap();
    assert_eq!(data_rows(&profiles).len(), 200);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cli(&["sweep", "--coeffs", "0,1,zz"]), EXIT_USAGE);
    assert_eq!(cli(&["sweep", "--unknown-flag"]), EXIT_USAGE);
    assert_eq!(cli(&[]), EXIT_USAGE);
    let missing = dir.path().join("no/such/dir/out.csv");
    assert_eq!(
        cli(&["bessel-disk", "--output", missing.to_str().unwrap()]),
        EXIT_USAGE
    );
    assert_eq!(cli(&["payne-rayner", "--r", "1"]), EXIT_USAGE);
    // f' = 1 − 2z vanishes on |z| = 0.5
    assert_eq!(
        cli(&["payne-rayner", "--coeffs", "0,1,-1", "--r", "0.5"]),
        EXIT_NUMERICAL
    );
    // a coarse step leaves truncation error far above the tolerance
    let (code, _) = run_to(
        dir.path(),
        "d.csv",
        &[
            "derivative-check",
            "--coeffs",
            "0,0,1",
            "--r",
            "0.3",
            "--h",
            "0.1",
        ],
    );
    assert_eq!(code, EXIT_CHECK_FAILED);
}

#[test]
fn binary_selftest_passes() {
    let out = Command::new(env!("CARGO_BIN_EXE_schwarz-eigen"))
        .arg("selftest")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK), "{text}");
    assert_eq!(data_rows(&text).len(), 14);

    let help = Command::new(env!("CARGO_BIN_EXE_schwarz-eigen"))
        .arg("--help")
        .output()
        .unwrap();
    assert_eq!(help.status.code(), Some(EXIT_OK));
    let help = String::from_utf8(help.stdout).unwrap();
    for sub in [
        "sweep",
        "derivative-check",
        "payne-rayner",
        "bessel-disk",
        "eigenmetric",
        "selftest",
    ] {
        assert!(help.contains(sub), "{sub}");
    }
}
