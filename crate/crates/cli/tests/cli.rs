use std::path::Path;
use std::process::{Command, Output};

fn pwlab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pwlab")).args(args).current_dir(dir).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn eigensweep_first_row_is_all_ones() {
    let dir = tempfile::tempdir().unwrap();
    let o = pwlab(&["eigensweep", "--omega", "0.5", "--n", "0..1", "--out", "sweep.csv"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body.len(), 3);
    let row: Vec<f64> = body[1].split(',').take(6).map(|c| c.parse().unwrap()).collect();
    assert_eq!(row, vec![0.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
}

#[test]
fn identical_configs_give_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.csv", "b.csv"] {
        let o = pwlab(&["young", "--trials", "12", "--seed", "5", "--out", name], dir.path());
        assert_eq!(code(&o), 0);
    }
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("# config: {"));
    assert!(text.contains("\"seed\":5"));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"schema_version": 1, "experiment": "cantor", "params": {"depth": 3, "p": ["4/3", 2], "trials": 10}}"#;
    std::fs::write(dir.path().join("c.json"), cfg).unwrap();
    let o = pwlab(&["cantor", "--config", "c.json", "--depth", "4", "--out", "c.csv"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("c.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 2);
    for row in rows {
        let cells: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cells[0], 4.0);
        assert!(cells[2] <= cells[3]);
    }
}

#[test]
fn validation_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = pwlab(&["cantor", "--depth", "30"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("depth_cap"));
    let o = pwlab(&["lacunary", "--J", "6", "--h", "0.015625"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("nyquist"));
    let o = pwlab(&["eigensweep", "--depth", "3"], dir.path());
    assert_eq!(code(&o), 1);
    let o = pwlab(&["shannon", "--bogus"], dir.path());
    assert_eq!(code(&o), 1);
}

#[test]
fn refused_certificate_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = pwlab(&["frames", "--bupu-half", "0.5", "--T", "16", "--functions", "1"], dir.path());
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("contraction"));
}

#[test]
fn acceptance_reports_json_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let o = pwlab(&["acceptance", "lacunary", "--out", "v.json"], dir.path());
    assert_eq!(code(&o), 0);
    let line: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(line["id"], 8);
    assert_eq!(line["passed"], true);
    let all: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("v.json")).unwrap()).unwrap();
    assert_eq!(all[0]["suite"], "lacunary");
    assert_eq!(code(&pwlab(&["acceptance", "nonsense"], dir.path())), 1);
}
