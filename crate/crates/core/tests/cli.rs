use std::path::Path;
use std::process::{Command, Output};

fn qlmwkb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlmwkb")).args(args).env_remove("QLMWKB_MAX_ORDER").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn expand_formats() {
    let o = qlmwkb(&["expand", "--target", "wkb", "--order", "8", "--format", "latex"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(r"g^{2}\,\left(3\,{k'}^{2} - 2\,k\,k''\right)\frac{i}{8\,k^{3}}"));

    let o = qlmwkb(&["expand", "--target", "qlm", "--iterate", "1", "--order", "3"]);
    let text = stdout(&o);
    assert!(text.contains("g^1: (-1/2) k^-1 k1\n"));
    assert!(text.contains("g^2: (-1/4 i) k^-2 k2 + (1/4 i) k^-3 k1^2\n"));

    let o = qlmwkb(&["expand", "--target", "wkb", "--order", "1"]);
    assert_eq!(stdout(&o), "order_cap 1\ng^0: (1 i) k\n");

    let o = qlmwkb(&["expand", "--order", "2", "--format", "json"]);
    assert_eq!(json(&o)["order_cap"], 2);
}

#[test]
fn order_caps_are_usage_errors() {
    let o = qlmwkb(&["expand", "--target", "wkb", "--order", "13"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("limit of 12"));
    assert_eq!(qlmwkb(&["expand", "--target", "qlm", "--order", "11"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_qlmwkb"))
        .args(["expand", "--target", "wkb", "--order", "4"])
        .env("QLMWKB_MAX_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_reports_prefix() {
    for (p, want) in [(0, 1), (1, 2), (2, 4), (3, 8)] {
        let o = qlmwkb(&["compare", "--iterate", &p.to_string(), "--order", "8"]);
        assert!(o.status.success(), "p = {p}");
        let r = json(&o);
        assert_eq!(r["match_prefix"], want);
        assert_eq!(r["rows"].as_array().unwrap().len(), 8);
    }
    let r = json(&qlmwkb(&["compare", "--iterate", "1", "--order", "4"]));
    assert_eq!(r["rows"][2]["equal"], false);
    assert!(r["rows"][2]["ratios"].as_array().is_some());
}

#[test]
fn spectrum_tables() {
    let o = qlmwkb(&["spectrum", "--potential", "hulthen", "--param", "a=1", "--param", "lambda=2", "--levels", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,method,energy,status");
    assert_eq!(lines.len(), 1 + 3 * 3);
    assert!(lines.contains(&"0,qlm,-1.12500000000000,ok"));
    assert!(lines.contains(&"0,wkb,-7.03125000000000,ok"));
    assert!(lines.contains(&"1,qlm,,no_bound_state"));

    let text = stdout(&qlmwkb(&["spectrum", "--potential", "ho1d", "--levels", "3"]));
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let n: f64 = f[0].parse().unwrap();
        assert_eq!(f[2].parse::<f64>().unwrap(), n + 0.5);
    }

    let text = stdout(&qlmwkb(&[
        "spectrum",
        "--potential",
        "morse",
        "--param",
        "A=1",
        "--param",
        "B=1",
        "--param",
        "a=1",
        "--levels",
        "0",
    ]));
    let energies: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(energies.len(), 3);
    assert!(energies.iter().all(|e| *e == energies[0]));

    let r = json(&qlmwkb(&[
        "spectrum",
        "--potential",
        "eckart1d",
        "--param",
        "A=0",
        "--param",
        "B=3",
        "--levels",
        "1",
        "--format",
        "json",
    ]));
    let row = &r["rows"][0];
    assert_eq!(row["method"], "exact");
    assert!(r["rows"].as_array().unwrap().iter().any(|x| x["provenance"]["bracket"].is_array()));
}

#[test]
fn bad_input_is_a_usage_error() {
    assert_eq!(qlmwkb(&["spectrum", "--potential", "nope"]).status.code(), Some(2));
    assert_eq!(qlmwkb(&["spectrum", "--potential", "morse", "--param", "A=1"]).status.code(), Some(2));
    assert_eq!(qlmwkb(&["spectrum", "--potential", "ho1d", "--param", "omega"]).status.code(), Some(2));
    assert_eq!(qlmwkb(&["spectrum", "--potential", "ho1d", "--format", "latex"]).status.code(), Some(2));
    assert_eq!(qlmwkb(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        qlmwkb(&["solve", "--potential", "cotangent", "--param", "V0=1", "--energy", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn outputs_are_deterministic_and_manifest_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["spectrum", "--potential", "modified_pt", "--param", "V0=6", "--levels", "4", "--out", d];
    assert!(qlmwkb(&args).status.success());
    let first = std::fs::read(dir.path().join("table.csv")).unwrap();
    assert!(!first.contains(&b'\r'));
    assert!(qlmwkb(&args).status.success());
    assert_eq!(first, std::fs::read(dir.path().join("table.csv")).unwrap());

    let m: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["command"], "spectrum");
    let listed = m["artifact_paths"].as_array().unwrap();
    assert_eq!(listed.len(), 1);
    assert!(Path::new(listed[0].as_str().unwrap()).ends_with("table.csv"));
    assert!(m["timestamp"].as_str().unwrap().ends_with('Z'));
    assert_eq!(m["engine_version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn solve_writes_run_file() {
    let dir = tempfile::tempdir().unwrap();
    let run = dir.path().join("run.json");
    let o = qlmwkb(&[
        "solve",
        "--potential",
        "ho1d",
        "--energy",
        "2.5",
        "--iterates",
        "3",
        "--grid-points",
        "2001",
        "--out",
        run.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r: serde_json::Value = serde_json::from_slice(&std::fs::read(&run).unwrap()).unwrap();
    assert_eq!(r["grid"].as_array().unwrap().len(), 2001);
    assert_eq!(r["samples"][0]["re"].as_array().unwrap().len(), 2001);
    assert_eq!(r["sup_diffs"].as_array().unwrap().len(), 3);
    assert_eq!(r["config"]["grid_points"], 2001);
    assert!(dir.path().join("manifest.json").exists());
}

#[test]
fn config_file_sits_between_flags_and_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"spectrum": {"potential": "ho1d", "levels": 1, "params": {"omega": 2}}}"#).unwrap();
    let c = cfg.to_str().unwrap();
    let text = stdout(&qlmwkb(&["spectrum", "--config", c, "--methods", "exact"]));
    assert_eq!(text, "n,method,energy,status\n0,exact,1.00000000000000,ok\n1,exact,3.00000000000000,ok\n");
    let text =
        stdout(&qlmwkb(&["spectrum", "--config", c, "--methods", "exact", "--levels", "0", "--param", "omega=4"]));
    assert_eq!(text, "n,method,energy,status\n0,exact,2.00000000000000,ok\n");

    std::fs::write(&cfg, r#"{"spectrum": {"levles": 1}}"#).unwrap();
    assert_eq!(qlmwkb(&["spectrum", "--config", c]).status.code(), Some(2));
}

#[test]
fn verify_flags_corrupted_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/v1");
    for name in ["wkb.txt", "qlm_y1.txt", "qlm_y2.txt"] {
        std::fs::copy(src.join(name), dir.path().join(name)).unwrap();
    }
    let d = dir.path().to_str().unwrap();
    let o = qlmwkb(&["verify", "--suite", "formal", "--fixtures", d]);
    assert!(o.status.success());
    assert_eq!(json(&o)["passed"], true);

    let y2 = dir.path().join("qlm_y2.txt");
    let text = std::fs::read_to_string(&y2).unwrap().replacen("g^3:", "g^3: (1) k^-2 k1 +", 1);
    std::fs::write(&y2, text).unwrap();
    let o = qlmwkb(&["verify", "--suite", "formal", "--fixtures", d]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["checks"][1]["passed"], false);

    std::fs::write(dir.path().join("wkb.txt"), "not a series").unwrap();
    assert_eq!(qlmwkb(&["verify", "--suite", "formal", "--fixtures", d]).status.code(), Some(1));
}

#[test]
fn verify_spectra_suite_passes() {
    let o = qlmwkb(&["verify", "--suite", "spectra"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let ids: Vec<u64> = json(&o)["checks"].as_array().unwrap().iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [5, 6, 7, 9]);
}
