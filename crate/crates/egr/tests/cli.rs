use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn egr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_egr"))
        .args(args)
        .output()
        .expect("egr runs")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let p = dir.join("cases.json");
    std::fs::write(&p, body).unwrap();
    p
}

fn shipped_with(edit: impl FnOnce(&mut serde_json::Value)) -> String {
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(data("cases.json")).unwrap()).unwrap();
    edit(&mut v);
    v.to_string()
}

#[test]
fn single_case_runs_clean() {
    let o = egr(&["run", "--case", "46", "--oracle-H", "30"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("NonExistence"));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = egr(&[
            "run",
            "--case",
            "67",
            "--oracle-H",
            "20",
            "--bound-M",
            "3",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let ra = std::fs::read(a.join("case_67.json")).unwrap();
    assert_eq!(ra, std::fs::read(b.join("case_67.json")).unwrap());
    assert!(a.join("summary.txt").exists() && a.join("timings.json").exists());
    let report: serde_json::Value = serde_json::from_slice(&ra).unwrap();
    assert_eq!(report["verdict"], "ConditionalNonExistence");
    assert_eq!(
        report["curves"][0]["generators"]["status"],
        "verified-under-rank-assumption"
    );
}

#[test]
fn corrupted_generator_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let body = shipped_with(|v| {
        let case = &mut v["cases"][4];
        assert_eq!(case["m"], 67);
        case["curves"][0]["generators"][0]["point"] = "(-584/49, 249/343*sqrt(67))".into();
    });
    let cfg = write_config(dir.path(), &body);
    let o = egr(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--case",
        "67",
        "--oracle-H",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("verify-generators E_0^+") && out.contains("P_67"), "{out}");
}

#[test]
fn missing_generators_block() {
    let dir = tempfile::tempdir().unwrap();
    let body = shipped_with(|v| {
        v["cases"][1]["curves"] = serde_json::json!([]);
    });
    let cfg = write_config(dir.path(), &body);
    let o = egr(&["run", "--config", cfg.to_str().unwrap(), "--case", "46"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("no generator data for E_3^+"));
}

#[test]
fn wrong_expectation_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let body = shipped_with(|v| {
        v["cases"][3]["expected"] = "NonExistence".into();
    });
    let cfg = write_config(dir.path(), &body);
    let o = egr(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--case",
        "62",
        "--oracle-H",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn bad_configs_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    for body in [
        r#"{"cases": []}"#,
        "{not json",
        r#"{"cases": [{"m": 4, "bounds": {"M": 1}, "expected": "Blocked"}]}"#,
    ] {
        let cfg = write_config(dir.path(), body);
        let o = egr(&["run", "--config", cfg.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(4), "{body}");
    }
    assert_eq!(
        egr(&["run", "--config", "/nonexistent/cases.json"]).status.code(),
        Some(4)
    );
    assert_eq!(egr(&["run", "--case", "7"]).status.code(), Some(4));
    assert_eq!(egr(&["run", "--bogus"]).status.code(), Some(4));
    assert_eq!(egr(&[]).status.code(), Some(4));
}

#[test]
fn positive_control() {
    let o = egr(&["run", "--config", data("control.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("ExistenceWitness"));
}

#[test]
fn verify_generators_command() {
    let o = egr(&["verify-generators", "--case", "43"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.matches("verified-under-rank-assumption").count(), 3);
    assert!(out.contains("(-104/9, -56/27*sqrt(43))"));
}

#[test]
fn search_command() {
    let o = egr(&["search", "--m", "43", "--sign", "+", "--n", "0", "--H", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines[0], "E_0^+: y^2 = x^3 + 1728");
    assert_eq!(&lines[1..], ["(-12, 0)", "O"]);
    let o = egr(&["search", "--m", "43", "--sign", "-", "--n", "0", "--H", "20000"]);
    assert_eq!(o.status.code(), Some(4));
}
