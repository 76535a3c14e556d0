use std::path::PathBuf;
use std::process::{Command, Output};

use anyhow::{Context, Result};
use serde_json::Value;

fn ekzb(args: &[&str]) -> Result<Output> {
    Command::new(env!("CARGO_BIN_EXE_ekzb")).args(args).output().context("spawning ekzb")
}

fn json_of(out: &Output) -> Result<Value> {
    serde_json::from_slice(&out.stdout).with_context(|| String::from_utf8_lossy(&out.stderr).into_owned())
}

fn path_file(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../paths").join(name);
    root.to_string_lossy().into_owned()
}

fn value(doc: &Value) -> (f64, f64) {
    let v = &doc["result"]["value"];
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn eval_g4_reports_lattice_cross_check() -> Result<()> {
    let out = ekzb(&["eval", "G", "--weight", "4", "--tau", "0+2i"])?;
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out)?;
    let (re, im) = value(&doc);
    assert!(im.abs() < 1e-12);
    // G_4 = 2ζ(4)(1 + 240 Σ σ_3(n) qⁿ), q = e^{−4π}
    let q = (-4.0 * std::f64::consts::PI).exp();
    let want = std::f64::consts::PI.powi(4) / 45.0 * (1.0 + 240.0 * (q + 9.0 * q * q));
    assert!((re - want).abs() < 1e-12, "{re} vs {want}");
    let delta = doc["result"]["lattice_oracle"]["delta"].as_f64().unwrap();
    assert!(delta < 1e-5, "lattice delta {delta}");
    Ok(())
}

#[test]
fn eval_phi_zero_is_one() -> Result<()> {
    let doc = json_of(&ekzb(&["eval", "phi", "--n", "0", "--z", "0.3+0.2i", "--w", "0.1-0.4i", "--tau", "0.2+1.3i"])?)?;
    let (re, im) = value(&doc);
    assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
    Ok(())
}

#[test]
fn eval_odd_a_at_origin_vanishes() -> Result<()> {
    let doc = json_of(&ekzb(&["eval", "A", "--m", "3", "--Q", "O", "--tau", "0.1+1.1i"])?)?;
    assert_eq!(value(&doc), (0.0, 0.0));
    Ok(())
}

#[test]
fn eval_csv_has_header() -> Result<()> {
    let out = ekzb(&["eval", "phi", "--n", "2", "--format", "csv"])?;
    let text = String::from_utf8(out.stdout)?;
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rows.headers()?, vec!["n", "Re", "Im", "tol", "q_terms"]);
    assert_eq!(rows.records().count(), 3);
    Ok(())
}

#[test]
fn verify_flatness_passes() -> Result<()> {
    let out = ekzb(&["verify", "flatness", "-N", "1", "-L", "4"])?;
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out)?;
    assert!(doc["result"]["max_residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(doc["result"]["pass"], true);
    assert_eq!(doc["config"]["seed"], 0xE11B);
    assert_eq!(doc["config"]["q_order"], 40);
    assert!(doc["version"].is_string());
    Ok(())
}

#[test]
fn verify_antipode_kzb_is_exact() -> Result<()> {
    let out = ekzb(&["verify", "antipode-kzb", "-N", "2", "-L", "3"])?;
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)?["result"]["max_residual"], 0.0);
    Ok(())
}

#[test]
fn fay_negative_control_fails() -> Result<()> {
    let out = ekzb(&["verify", "fay", "--negative-control"])?;
    assert_eq!(out.status.code(), Some(1));
    assert!(json_of(&out)?["result"]["max_residual"].as_f64().unwrap() > 1e-3);
    Ok(())
}

#[test]
fn reruns_are_reproducible() -> Result<()> {
    let args = ["verify", "main-identity", "-N", "2", "-L", "3", "--seed", "0x2A"];
    let a = json_of(&ekzb(&args)?)?;
    let b = json_of(&ekzb(&args)?)?;
    assert_eq!(a, b);
    assert_eq!(a["config"]["seed"], 42);
    Ok(())
}

#[test]
fn usage_errors_exit_with_two() -> Result<()> {
    assert_eq!(ekzb(&["verify", "nonsense"])?.status.code(), Some(2));
    assert_eq!(ekzb(&["eval", "G", "--tau", "banana"])?.status.code(), Some(2));
    assert_eq!(ekzb(&["eval", "G", "--tau", "0-1i"])?.status.code(), Some(2));
    assert_eq!(ekzb(&["verify", "flatness", "--tol", "-1"])?.status.code(), Some(2));
    assert_eq!(ekzb(&["frobnicate"])?.status.code(), Some(2));
    Ok(())
}

#[test]
fn config_file_is_echoed() -> Result<()> {
    let dir = tempfile::tempdir()?;
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "level = 2\nlen = 2\n")?;
    let out = ekzb(&["verify", "bar-hopf", "--config", cfg.to_str().unwrap()])?;
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out)?;
    assert_eq!(doc["config"]["level"], 2);
    assert_eq!(doc["config"]["config_file"]["len"], 2);
    Ok(())
}

#[test]
fn out_flag_writes_file() -> Result<()> {
    let dir = tempfile::tempdir()?;
    let target = dir.path().join("report.csv");
    let out = ekzb(&["verify", "residue", "--format", "csv", "--out", target.to_str().unwrap()])?;
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let mut rdr = csv::Reader::from_path(&target)?;
    assert_eq!(&rdr.headers()?[0], "check");
    assert_eq!(rdr.records().count(), 5);
    Ok(())
}

#[test]
fn constant_path_gives_identity() -> Result<()> {
    let doc = json_of(&ekzb(&["transport", &path_file("constant.json")])?)?;
    let terms = doc["result"]["transport"]["element"]["terms"].as_array().unwrap().clone();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["word"], Value::Array(vec![]));
    assert_eq!(terms[0]["re"], 1.0);
    Ok(())
}

#[test]
fn reversal_pair_is_inverse() -> Result<()> {
    let out = ekzb(&["transport", &path_file("open_polyline.json"), "-L", "3", "--reverse-check"])?;
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out)?;
    assert!(doc["result"]["checks"]["reversal"]["defect"].as_f64().unwrap() < 1e-8);
    Ok(())
}

#[test]
fn loop_around_origin_matches_residue_formula() -> Result<()> {
    let out = ekzb(&["transport", &path_file("loop_origin.json"), "-L", "2", "--residue-check"])?;
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out)?;
    assert!(doc["result"]["checks"]["residue"]["defect"].as_f64().unwrap() < 1e-7);
    assert!(doc["result"]["transport"]["log"].is_object());
    Ok(())
}

#[test]
fn clearance_violation_is_an_input_error() -> Result<()> {
    let out = ekzb(&["transport", &path_file("too_close.json")])?;
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("clearance"));
    Ok(())
}

#[test]
fn bar_dumps() -> Result<()> {
    let doc = json_of(&ekzb(&["bar", "h0", "-N", "1", "-L", "2"])?)?;
    assert_eq!(doc["result"]["basis"].as_array().unwrap().len(), 1 + 2 + 4);
    let csv_out = ekzb(&["bar", "delta", "-L", "2", "--format", "csv"])?;
    assert!(String::from_utf8(csv_out.stdout)?.starts_with("length,source,target,coefficient\n1,w0,nu,1\n"));
    assert_eq!(ekzb(&["bar", "h0", "--format", "csv"])?.status.code(), Some(2));
    Ok(())
}
