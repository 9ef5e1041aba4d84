use std::path::Path;
use std::process::{Command, Output};

use decoq_cli::commands::compute_curve;
use decoq_cli::config::RunConfig;
use decoq_cli::output::read_curve_csv;

fn decoq(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decoq"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

#[test]
fn curve_csv_is_deterministic_and_round_trips() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["curve", "--samples", "61", "--seed", "5"];
    assert!(decoq(&args, a.path()).status.success());
    assert!(decoq(&args, b.path()).status.success());
    let bytes_a = std::fs::read(a.path().join("curve.csv")).unwrap();
    assert_eq!(bytes_a, std::fs::read(b.path().join("curve.csv")).unwrap());

    let parsed = read_curve_csv(bytes_a.as_slice()).unwrap();
    let cfg = RunConfig { samples: 61, seed: 5, ..Default::default() };
    assert_eq!(parsed, compute_curve(&cfg).unwrap());
    let svg = std::fs::read_to_string(a.path().join("curve.svg")).unwrap();
    assert!(svg.contains("<polyline"));
}

#[test]
fn tld_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = decoq(&["tld"], dir.path());
    assert_eq!(ok.status.code(), Some(0));
    let text = String::from_utf8_lossy(&ok.stdout);
    assert!(text.contains("tau_g") && text.contains("49.4 ps"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("tld.json")).unwrap()).unwrap();
    for key in ["tau_ld_units", "tau_ld_ps", "tau_g_ps", "verdict"] {
        assert!(!json["results"][key].is_null(), "{key}");
    }
    assert_eq!(json["config"]["e_j"], 51.8);

    assert_eq!(decoq(&["tld", "--eta", "0"], dir.path()).status.code(), Some(2));
    assert_eq!(decoq(&["tld", "--temp-mk", "-3"], dir.path()).status.code(), Some(1));
}

#[test]
fn verify_passes_and_detects_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let clean = decoq(&["verify"], dir.path());
    assert_eq!(clean.status.code(), Some(0), "{}", String::from_utf8_lossy(&clean.stdout));
    let bad = decoq(&["verify", "--corrupt", "b2"], dir.path());
    assert_eq!(bad.status.code(), Some(3));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    let dephasing = json["checks"].as_array().unwrap().iter().find(|c| c["name"] == "pure_dephasing_oracle").unwrap();
    assert_eq!(dephasing["pass"], false);
}

#[test]
fn sweep_with_check_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "eta = 1e-5\ntemp_mk = 50\n").unwrap();
    let out = decoq(
        &[
            "sweep",
            "--config",
            cfg.to_str().unwrap(),
            "--temp-mk",
            "30",
            "--axis",
            "eta",
            "--values",
            "1e-7,1e-6,1e-5",
            "--check",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert!(csv.contains("# temp_mk = 30"));
    assert!(csv.contains("eta,tau_ld_units,tau_ld_ps,d_at_tau_g,d_at_t_star,status"));
    assert_eq!(csv.lines().filter(|l| l.ends_with(",ok")).count(), 3);
}
