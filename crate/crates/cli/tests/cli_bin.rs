//! End-to-end coverage of the binary: exit codes, report files, scenario
//! loading, overrides and determinism under a fixed seed.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fermat-pdde"))
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("fermat-pdde-test-{}-{name}", std::process::id()));
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

/// Removes timing fields in place so reports can be compared byte-for-byte.
fn strip_timing(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            map.remove("timing_ms");
            for v in map.values_mut() {
                strip_timing(v);
            }
        }
        serde_json::Value::Array(items) => {
            for v in items {
                strip_timing(v);
            }
        }
        _ => {}
    }
}

#[test]
fn examples_pass_and_are_deterministic() {
    let out_a = tmp("examples-a.json");
    let out_b = tmp("examples-b.json");
    let status = run(&[
        "examples",
        "--seed",
        "777",
        "--json",
        out_a.to_str().unwrap(),
    ]);
    assert!(
        status.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&status.stderr)
    );
    let status = run(&[
        "examples",
        "--seed",
        "777",
        "--json",
        out_b.to_str().unwrap(),
    ]);
    assert!(status.status.success());

    let mut a: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_a).unwrap()).unwrap();
    let mut b: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_b).unwrap()).unwrap();
    strip_timing(&mut a);
    strip_timing(&mut b);
    assert_eq!(a, b, "reports differ beyond timing");
    assert_eq!(a["all_verified"], serde_json::Value::Bool(true));
    assert_eq!(a["examples"].as_array().unwrap().len(), 9);
    std::fs::remove_file(out_a).ok();
    std::fs::remove_file(out_b).ok();
}

#[test]
fn override_perturbation_fails_exactly_one() {
    let out = tmp("override.json");
    let status = run(&[
        "examples",
        "--override",
        "t1e2.a1=2.001",
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(1));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for example in report["examples"].as_array().unwrap() {
        let verdict = example["verdict"].as_str().unwrap();
        if example["id"] == "t1e2" {
            assert_eq!(verdict, "Failed");
            assert!(example["residual_term_count"].as_u64().unwrap() > 0);
            assert!(example["residual_max_coeff"].as_f64().unwrap() > 0.0);
        } else {
            assert_eq!(
                verdict, "Verified",
                "{} affected by foreign override",
                example["id"]
            );
        }
    }
    std::fs::remove_file(out).ok();
}

#[test]
fn verify_inline_flags() {
    let status = run(&[
        "verify",
        "--equation",
        "e1",
        "--coeffs",
        "2,1,3,5",
        "--mu",
        "1",
        "--shift",
        "2.1972245773362196,-1.3862943611198906,2.0943951023931953i",
        "--dim",
        "3",
        "--g",
        "z1+2*z2+3*z3+5",
        "--f",
        "e^((z1+2*z2+3*z3+5)/2)",
    ]);
    assert!(
        status.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&status.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&status.stdout)).unwrap();
    assert_eq!(report["verification"]["verdict"], "Verified");

    // a wrong candidate exits with 1
    let status = run(&[
        "verify",
        "--equation",
        "e1",
        "--coeffs",
        "2,1,3,5",
        "--mu",
        "1",
        "--shift",
        "1,2,3",
        "--dim",
        "3",
        "--g",
        "z1+2*z2+3*z3+5",
        "--f",
        "e^(z1)",
    ]);
    assert_eq!(status.status.code(), Some(1));

    // malformed input exits with 2
    let status = run(&["verify", "--equation", "e1", "--mu", "1", "--dim", "3"]);
    assert_eq!(status.status.code(), Some(2));
    let status = run(&[
        "verify",
        "--equation",
        "e1",
        "--coeffs",
        "2,1,3,5",
        "--mu",
        "1",
        "--shift",
        "1,2,3",
        "--dim",
        "3",
        "--g",
        "z1",
        "--f",
        "e^(e^(z1))",
    ]);
    assert_eq!(status.status.code(), Some(2));
}

#[test]
fn construct_scenario_file() {
    let scenario = tmp("construct.json");
    std::fs::write(
        &scenario,
        r#"{
        "mode": "construct",
        "equation": {
            "kind": "e1",
            "a": [[3,0],[5,0],[-3,0],[1,0]],
            "mu": 1,
            "c": [[-0.5287023359929278,0],[1.3217558399823195,0],[-1.3217558399823195,0]],
            "dim": 3
        },
        "construct": {
            "theorem": 1,
            "case": "I-beta-mu-nonzero",
            "params": {
                "k3": [1,0],
                "k4": [0,0],
                "beta": [[5,0],[7,0],[3,0]],
                "beta_const": [1,0],
                "periodic": "(z2+z3)^2"
            }
        }
    }"#,
    )
    .unwrap();
    let out = tmp("construct-report.json");
    let status = run(&[
        "construct",
        "--scenario",
        scenario.to_str().unwrap(),
        "--json",
        out.to_str().unwrap(),
    ]);
    assert!(
        status.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&status.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["verification"]["verdict"], "Verified");
    assert_eq!(
        report["constraints"]["all_pass"],
        serde_json::Value::Bool(true)
    );
    let f = report["constructed"]["f"].as_str().unwrap();
    assert!(f.contains("e^("), "constructed f not printed: {f}");
    std::fs::remove_file(scenario).ok();
    std::fs::remove_file(out).ok();
}

#[test]
fn solve_scenario_file() {
    // recover the known shift component c1 = 2 ln 3
    let scenario = tmp("solve.json");
    std::fs::write(
        &scenario,
        r#"{
        "mode": "solve",
        "equation": {
            "kind": "e1",
            "a": [[2,0],[1,0],[3,0],[5,0]],
            "mu": 1,
            "c": [[0,0],[-1.3862943611198906,0],[0,2.0943951023931953]],
            "dim": 3
        },
        "solve": {
            "target": "shift",
            "family": "t1-beta",
            "chi": [[1,0],[2,0],[3,0]],
            "k_pair": [[1,0],[0,0]],
            "unknown": 1,
            "branch": 0
        }
    }"#,
    )
    .unwrap();
    let status = run(&["solve", "--scenario", scenario.to_str().unwrap()]);
    assert!(
        status.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&status.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&status.stdout)).unwrap();
    let component = report["solve"]["component"].as_array().unwrap();
    let re = component[0].as_f64().unwrap();
    let im = component[1].as_f64().unwrap();
    assert!(
        (re - 2.0 * 3.0f64.ln()).abs() < 1e-9 && im.abs() < 1e-9,
        "got {re}+{im}i"
    );
    std::fs::remove_file(scenario).ok();
}

#[test]
fn invalid_scenario_names_offending_field() {
    let scenario = tmp("invalid.json");
    std::fs::write(
        &scenario,
        r#"{
        "mode": "verify",
        "equation": {
            "kind": "e2",
            "a": [[1,0],[1,0],[0,1],[1,0]],
            "mu": 1,
            "nu": 2,
            "c": [[1,0],[1,0]],
            "g": "z1+z2",
            "dim": 2
        },
        "f": "e^(z1)"
    }"#,
    )
    .unwrap();
    let out = run(&["verify", "--scenario", scenario.to_str().unwrap()]);
    // a1^2 + a3^2 = 0 violates the second equation's hypothesis
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("equation"),
        "diagnostic does not name the field: {stderr}"
    );
    std::fs::remove_file(scenario).ok();
}

#[test]
fn unknown_override_id_is_an_input_error() {
    let out = run(&["examples", "--override", "nope.a1=1"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("unknown example"), "stderr: {stderr}");
}

#[test]
fn shipped_scenarios_run() {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("scenarios");
    for (mode, file) in [
        ("verify", "verify-e3.json"),
        ("construct", "construct-t1.json"),
        ("solve", "solve-shift.json"),
    ] {
        let path = root.join(file);
        let out = run(&[mode, "--scenario", path.to_str().unwrap()]);
        assert!(
            out.status.success(),
            "{file}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}
