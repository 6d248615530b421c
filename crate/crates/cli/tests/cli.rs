//! End-to-end exercises of the fa2f binary: exit codes, write-once
//! semantics, byte-identical reruns, plotting.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fa2f() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fa2f"))
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fa2f-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run_with_root(cmd: &mut Command, root: &Path) -> Output {
    cmd.env("FA2F_OUT_ROOT", root).output().unwrap()
}

#[test]
fn constants_run_emits_lambda_row() {
    let dir = temp_dir("constants");
    let cfg = write_config(
        &dir,
        "c.cfg",
        "schema = 1\nexperiment = bootstrap.constants\nseed = 1\n",
    );
    let out = run_with_root(fa2f().arg("run").arg(&cfg), &dir);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.join("bootstrap-constants/results.csv")).unwrap();
    assert!(csv.contains("lambda(2,2),0.5483113556160755"), "{csv}");
}

#[test]
fn unknown_key_exits_2_and_writes_nothing() {
    let dir = temp_dir("badkey");
    let cfg = write_config(
        &dir,
        "c.cfg",
        "schema = 1\nexperiment = bootstrap.constants\nseed = 1\nwhat = 3\n",
    );
    let out = run_with_root(fa2f().arg("run").arg(&cfg), &dir);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.join("bootstrap-constants").exists());
}

#[test]
fn numeric_guard_exits_3() {
    // scales overflow at tiny density trips the numeric guard
    let dir = temp_dir("numeric");
    let cfg = write_config(
        &dir,
        "c.cfg",
        "schema = 1\nexperiment = droplet.sg-bound\nseed = 1\nq = 1e-40\n",
    );
    let out = run_with_root(fa2f().arg("run").arg(&cfg), &dir);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn identical_config_and_seed_identical_bytes() {
    let text = "schema = 1\nexperiment = kcm.tau0-samples\nseed = 5\nq = 0.4\nL = 8\nreplicas = 40\nt_max = 50\n";
    let dir_a = temp_dir("bytes-a");
    let dir_b = temp_dir("bytes-b");
    let cfg_a = write_config(&dir_a, "c.cfg", text);
    let cfg_b = write_config(&dir_b, "c.cfg", text);
    let out_a = run_with_root(fa2f().arg("run").arg(&cfg_a), &dir_a);
    let out_b = run_with_root(fa2f().arg("run").arg(&cfg_b), &dir_b);
    assert!(out_a.status.success() && out_b.status.success());
    let bytes_a = std::fs::read(dir_a.join("kcm-tau0-samples/results.csv")).unwrap();
    let bytes_b = std::fs::read(dir_b.join("kcm-tau0-samples/results.csv")).unwrap();
    assert_eq!(bytes_a, bytes_b);
    // sentinel spelling in the CSV contract
    let header = String::from_utf8(bytes_a).unwrap();
    assert!(header.starts_with("seed,replica,q,L,tau0\n"));
}

#[test]
fn bp_csv_spells_infinity_as_inf() {
    // a near-zero density leaves the torus all-healthy: every replica
    // reports tau0_bp = inf in the dump
    let dir = temp_dir("bp-inf");
    let cfg = write_config(
        &dir,
        "c.cfg",
        "schema = 1\nexperiment = bootstrap.tau0-samples\nseed = 2\nq = 1e-12\nL = 8\nreplicas = 3\n",
    );
    let out = run_with_root(fa2f().arg("run").arg(&cfg), &dir);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.join("bootstrap-tau0-samples/results.csv")).unwrap();
    assert!(csv.starts_with("seed,replica,q,L,tau0_bp\n"));
    assert_eq!(csv.matches(",inf").count(), 3, "{csv}");
}

#[test]
fn rerun_same_id_is_rejected() {
    let dir = temp_dir("once");
    let cfg = write_config(
        &dir,
        "c.cfg",
        "schema = 1\nexperiment = bootstrap.constants\nseed = 1\n",
    );
    assert!(run_with_root(fa2f().arg("run").arg(&cfg), &dir).status.success());
    let again = run_with_root(fa2f().arg("run").arg(&cfg), &dir);
    assert_eq!(again.status.code(), Some(2));
}

#[test]
fn plot_produces_deterministic_svg() {
    let dir = temp_dir("plot");
    let cfg = write_config(
        &dir,
        "c.cfg",
        "schema = 1\nexperiment = droplet.sg-bound\nseed = 1\nq = 0.5,0.2\n",
    );
    assert!(run_with_root(fa2f().arg("run").arg(&cfg), &dir).status.success());
    let csv = dir.join("droplet-sg-bound/results.csv");
    let svg_a = dir.join("a.svg");
    let svg_b = dir.join("b.svg");
    for out_path in [&svg_a, &svg_b] {
        let out = fa2f()
            .args([
                "plot",
                "--input",
                csv.to_str().unwrap(),
                "--x",
                "q",
                "--y",
                "r",
                "--refline",
                "1.09662271123215",
                "--title",
                "droplet rate",
                "--output",
                out_path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(&svg_a).unwrap();
    let b = std::fs::read(&svg_b).unwrap();
    assert_eq!(a, b);
    let svg = String::from_utf8(a).unwrap();
    assert!(svg.contains("stroke-dasharray")); // reference line present
}

#[test]
fn suite_rejects_unknown_criterion() {
    let out = fa2f().args(["suite", "fast", "--filter", "A99"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suite_single_criterion_passes() {
    let out = fa2f().args(["suite", "fast", "--filter", "A3"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("PASS A3"), "{stdout}");
}

#[test]
fn list_shows_registry() {
    let out = fa2f().arg("list").output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    for name in [
        "bootstrap.constants",
        "bootstrap.tau0-samples",
        "droplet.sg-bound",
        "kcm.stationarity",
        "cbsep.scaling",
    ] {
        assert!(stdout.contains(name), "missing {name} in registry listing");
    }
}
