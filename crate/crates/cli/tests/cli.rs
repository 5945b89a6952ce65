use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn systems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../systems")
}

fn hecklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecklab"))
        .args(args)
        .env_remove("HECKLAB_MAX_BALL")
        .output()
        .expect("binary runs")
}

fn system(name: &str) -> String {
    systems().join(name).to_string_lossy().into_owned()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn info_on_infinite_dihedral() {
    let out = hecklab(&["info", "--system", &system("dihedral_inf.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["report"]["type"], "affine");
    assert_eq!(r["report"]["nuclear"], true);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["configHash"].as_str().unwrap().len(), 64);
}

#[test]
fn khintchine_verify_pentagon() {
    let out = hecklab(&[
        "khintchine-verify",
        "--system",
        &system("pentagon.json"),
        "--q",
        "1/4",
        "--d",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["report"]["mode"], "rational");
    for suite in ["decomposition", "intertwiner", "reconstruction", "orthogonality"] {
        assert_eq!(r["report"]["maxErrors"][suite], 0.0, "{suite}");
    }
}

#[test]
fn simplicity_below_boundary() {
    let out = hecklab(&["simplicity", "--system", &system("free3.json"), "--q", "0.4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out)["report"].clone();
    assert_eq!(r["verdict"], "notSimple");
    assert_eq!(r["family"], "freeAbelianProduct");
    assert_eq!(r["threshold"], 2);
    assert!(r["regionValue"].as_f64().unwrap() >= 2.0);
    assert!(r.get("certificate").is_some());
    let out = hecklab(&["simplicity", "--system", &system("free3.json"), "--q", "1"]);
    let r = report(&out)["report"].clone();
    assert_eq!(r["verdict"], "simple+uniqueTrace");
    assert!(r.get("certificate").is_none());
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "haagerup",
        "--system",
        &system("free3.json"),
        "--q",
        "1/4",
        "--d",
        "2",
        "--n",
        "5",
        "--samples",
        "4",
        "--seed",
        "9",
    ];
    let a = hecklab(&args);
    let b = hecklab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = hecklab(&[
        "haagerup",
        "--system",
        &system("free3.json"),
        "--q",
        "1/4",
        "--d",
        "2",
        "--n",
        "5",
        "--samples",
        "4",
        "--seed",
        "10",
    ]);
    assert_ne!(report(&a)["configHash"], report(&c)["configHash"]);
}

#[test]
fn haagerup_degenerate_parameter_is_flagged_not_failed() {
    let out = hecklab(&[
        "haagerup",
        "--system",
        &system("free3.json"),
        "--q",
        "1",
        "--d",
        "2",
        "--n",
        "5",
        "--samples",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out)["report"].clone();
    assert_eq!(r["degenerate"], true);
    assert!(r["openQuestion"].is_string());
    assert_eq!(r["flaggedSamples"], Value::Array(vec![]));
}

#[test]
fn writes_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("grid.json");
    let csv = dir.path().join("grid.csv");
    let out = hecklab(&[
        "simplicity",
        "--system",
        &system("free3.json"),
        "--grid",
        "1/4:4:16",
        "--out",
        json.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(r["report"]["points"].as_array().unwrap().len(), 16);
    let table = std::fs::read_to_string(&csv).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("q,verdict,region_value,threshold"));
    assert_eq!(lines.count(), 16);
}

#[test]
fn powers_prints_compression_caveat() {
    let out = hecklab(&["powers", "--system", &system("free3.json"), "--n", "5", "--levels", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lower bound (compression)"));
    let r = report(&out)["report"].clone();
    assert_eq!(r["averagingNorm"]["kind"], "lower bound (compression)");
    assert_eq!(r["elements"]["w1"], "aca");
    assert_eq!(r["decay"]["strictlyDecreasing"], true);
}

#[test]
fn config_errors_exit_with_three() {
    assert_eq!(
        hecklab(&["info", "--system", "/nonexistent.json"]).status.code(),
        Some(3)
    );
    assert_eq!(hecklab(&["bogus"]).status.code(), Some(3));
    assert_eq!(
        hecklab(&["info", "--system", &system("free3.json"), "--q", "x"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        hecklab(&["hecke-mul", "--system", &system("free3.json"), "--x", "T[a]"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        hecklab(&[
            "hecke-mul",
            "--system",
            &system("free3.json"),
            "--q",
            "2",
            "--exact",
            "--x",
            "T[a]",
            "--y",
            "T[b]"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        hecklab(&["powers", "--system", &system("dihedral_inf.json")])
            .status
            .code(),
        Some(3)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"generators": ["s"], "exponents": [[2]]}"#).unwrap();
    assert_eq!(
        hecklab(&["info", "--system", bad.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn cap_exceeded_exits_with_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_hecklab"))
        .args(["ball", "--system", &system("free3.json"), "--n", "4"])
        .env("HECKLAB_MAX_BALL", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn exact_product() {
    let out = hecklab(&[
        "hecke-mul",
        "--system",
        &system("free3.json"),
        "--q",
        "1/4",
        "--x",
        "T[a]",
        "--y",
        "T[a]",
    ]);
    let r = report(&out)["report"].clone();
    // T_a^2 = 1 + p T_a with p = (q - 1)/sqrt(q) = -3/2
    assert_eq!(r["product"]["e"], "1");
    assert_eq!(r["product"]["a"], "-3/2");
}

#[test]
fn ching_passes_on_free_product() {
    let out = hecklab(&["ching", "--system", &system("free3.json"), "--samples", "40"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out)["report"].clone();
    assert!(r["maxRatio"].as_f64().unwrap() <= 1.0);
    assert!(r["parallelogramResidual"].as_f64().unwrap() < 1e-10);
}
