//! End-to-end CLI checks: output content, exit codes, and JSON determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_u2slopes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn slopes_weight13_level4() {
    let out = run(&["slopes", "--level", "4", "--weight", "13", "--count", "8", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "slopes");
    let slopes: Vec<&str> = v["slopes"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(slopes, ["2", "4", "6", "8", "10", "12", "14", "16"]);
    assert_eq!(v["classical_dimension"], 5);
    let classical: Vec<&str> =
        v["classical_slopes"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(classical, ["2", "4", "6", "8", "10"]);
}

#[test]
fn slopes_level8_weight4() {
    let out = run(&["slopes", "--level", "8", "--weight", "4", "--count", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1, 2, 3, 4, 5, 6"), "{}", text);
}

#[test]
fn unrealizable_weight_exits_1() {
    let out = run(&["slopes", "--level", "4", "--weight", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_error_exits_1() {
    let out = run(&["slopes", "--level", "4"]); // missing --weight
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_shallow_passes() {
    let out = run(&["verify", "--depth", "12"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS j-identity"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_selected_check() {
    let out = run(&["verify", "--depth", "10", "--check", "j8-j16"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1);

    let out = run(&["verify", "--depth", "10", "--check", "not-a-check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn serre_and_mod2_and_cm() {
    let out = run(&["serre", "--level", "8", "--weight", "5", "--size", "6", "--r", "1"]);
    assert!(out.status.success(), "{}", stdout(&out));

    let out = run(&["mod2", "--level", "4", "--size", "8"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("mod-2 determinant = 1"));

    let out = run(&["cm", "--level", "4", "--weight", "13"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("slope 6"));

    // the level-8 CM slope sits at the boundary; reported, not an error
    let out = run(&["cm", "--level", "8", "--weight", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("boundary"));
}

#[test]
fn json_round_trips_byte_identical() {
    for args in [
        vec!["slopes", "--level", "8", "--weight", "3", "--count", "4", "--format", "json"],
        vec!["verify", "--depth", "8", "--check", "z-hauptmodul", "--format", "json"],
        vec!["mod2", "--level", "4", "--size", "6", "--format", "json"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{:?}", args);
        let text = stdout(&out);
        let parsed: u2slopes_cli::report::JsonReport = serde_json::from_str(&text).unwrap();
        let reserialized = format!("{}\n", serde_json::to_string_pretty(&parsed).unwrap());
        assert_eq!(text, reserialized, "round trip for {:?}", args);
    }
}
