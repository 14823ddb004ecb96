use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tate-smith")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn result<'a>(r: &'a Value, id: &str) -> &'a Value {
    r["results"].as_array().unwrap().iter().find(|x| x["id"] == id).expect("check present")
}

#[test]
fn tate_on_free_block_vanishes() {
    let out = run(&["tate", "--module", &data("j3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(result(&r, "tate_dims")["values"], serde_json::json!({ "t0": 0, "t1": 0 }));
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"], "tate");
}

#[test]
fn tate_on_small_block() {
    let out = run(&["tate", "--input", &data("j2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(result(&report(&out), "tate_dims")["values"], serde_json::json!({ "t0": 1, "t1": 1 }));
}

#[test]
fn bc_torus_label() {
    let out = run(&["bc-torus", "--input", &data("torus_2_3_m1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(result(&r, "bc_obj")["values"]["support"], serde_json::json!([{ "label": [4], "mult": 1 }]));
    assert_eq!(result(&r, "oracle")["pass"], true);
}

#[test]
fn malformed_json_reports_byte_offset() {
    let out = run(&["bc-torus", "--input", &data("bad.json")]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    // the offending `]` after the trailing comma
    assert!(stderr.contains("at byte 55"), "{stderr}");
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_flag_exits_2() {
    assert_eq!(run(&["tate", "--bogus", "x"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn missing_file_exits_2() {
    assert_eq!(run(&["tate", "--input", &data("absent.json")]).status.code(), Some(2));
}

#[test]
fn smith_cone_and_cycle() {
    let r = report(&run(&["smith", "--input", &data("cone.json")]));
    assert_eq!(result(&r, "localization")["values"]["tate_x"], serde_json::json!([1, 1]));
    let out = run(&["smith", "--input", &data("rotated_cycle.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(result(&report(&out), "localization")["values"]["tate_x"], serde_json::json!([0, 0]));
}

#[test]
fn brauer_negative_control_fails() {
    let out = run(&["hecke", "--group", &data("c4_inversion.json"), "--subgroup", "2", "--check", "brauer"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(result(&r, "brauer")["values"]["plain"], false);
    assert!(result(&r, "brauer")["values"]["failure"].is_array());
}

#[test]
fn hecke_shift_passes() {
    for check in ["plain", "brauer", "diagram"] {
        let out = run(&["hecke", "--group", &data("c2_cubed_shift.json"), "--check", check]);
        assert_eq!(out.status.code(), Some(0), "{check}");
    }
}

#[test]
fn excursion_checks() {
    let gamma = data("gamma_s3.json");
    let target = data("target_s3_trivial_sigma.json");
    for check in ["relations", "bijection", "functoriality", "norm"] {
        let out = run(&["excursion", "--gamma", &gamma, "--target", &target, "--check", check]);
        assert_eq!(out.status.code(), Some(0), "{check}");
    }
    let r = report(&run(&["excursion", "--gamma", &gamma, "--target", &target, "--check", "bijection"]));
    assert_eq!(result(&r, "bijection")["values"]["points"], 3);
    assert_eq!(result(&r, "bijection")["values"]["characters"], 3);
}

#[test]
fn norm_needs_sigma() {
    let out = run(&["excursion", "--gamma", &data("gamma_c2.json"), "--target", &data("target_c2.json"), "--check", "norm"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(report(&out)["results"][0]["error"].is_string());
}

#[test]
fn linkage_sign_rep() {
    let out = run(&["linkage", "--group", &data("s3.json"), "--rep", &data("s3_sign.json"), "--p", "5", "--field", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(result(&report(&out), "linkage")["values"]["t0_is_twist"], true);
}

#[test]
fn report_file_matches_stdout_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let args = ["excursion", "--gamma", &data("gamma_s3.json"), "--target", &data("target_s3.json"), "--check", "relations", "--field", "5", "--seed", "3"];
    let mut with_report: Vec<&str> = args.to_vec();
    let p = path.to_string_lossy().into_owned();
    with_report.extend(["--report", &p]);
    let a = run(&with_report);
    let b = run(&args);
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    assert_eq!(r["seed"], 3);
    assert!(r.get("wall_time").is_none());
}

#[test]
fn timing_is_opt_in() {
    let r = report(&run(&["tate", "--input", &data("j2.json"), "--timing"]));
    assert!(r["wall_time"].is_number());
}

#[test]
fn digest_tracks_inputs() {
    let a = report(&run(&["tate", "--input", &data("j2.json")]));
    let b = report(&run(&["tate", "--input", &data("j3.json")]));
    assert_ne!(a["inputs_digest"], b["inputs_digest"]);
    assert_eq!(a["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let ids: Vec<&str> = r["results"].as_array().unwrap().iter().map(|x| x["id"].as_str().unwrap()).collect();
    assert_eq!(ids.len(), 14);
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
}
