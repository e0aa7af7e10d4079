use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_neartouch"))
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("neartouch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn asym_prints_predictions_without_solving() {
    let out = bin()
        .args(["asym", "--config"])
        .arg(config("blowup.toml"))
        .arg("--out")
        .arg(scratch("asym.csv"))
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(scratch("asym.csv")).unwrap();
    assert_eq!(text.lines().count(), 10);
    assert!(text.starts_with("eps,k,r1,r2,model,"));
}

#[test]
fn structured_report_converts_to_csv() {
    let json = scratch("solve.json");
    let out = bin()
        .args([
            "solve",
            "--eps",
            "1e-2",
            "--k",
            "0.05",
            "--model",
            "pec",
            "--format",
            "structured",
            "--out",
        ])
        .arg(&json)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = bin()
        .arg("report")
        .arg("--input")
        .arg(&json)
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.lines().nth(1).unwrap().contains(",pec,plane_wave,"));
}

#[test]
fn exit_status_reflects_input_errors() {
    let bad = scratch("bad.toml");
    let text = std::fs::read_to_string(config("blowup.toml"))
        .unwrap()
        .replace("r1 = 1.0", "r1 = 1.0\nepsilon = 1e-3");
    std::fs::write(&bad, text).unwrap();
    let out = bin()
        .arg("sweep")
        .arg("--config")
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pair.epsilon"));
    let out = bin()
        .args(["verify", "--suite", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_specfun_passes() {
    let report = scratch("verify.json");
    let out = bin()
        .args(["verify", "--suite", "specfun", "--out"])
        .arg(&report)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Wronskian") && text.contains("0 failed"));
    assert!(std::fs::read_to_string(report)
        .unwrap()
        .contains("\"passed\": true"));
}
