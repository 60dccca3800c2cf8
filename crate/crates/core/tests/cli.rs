//! End-to-end checks of the `toric` binary: JSON schemas, exit codes, and
//! determinism under a fixed seed.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn toric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn toric_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_toric"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn tree_fan_and_diagonals_agree() {
    let fan = toric(&["tree", "--n", "6", "--fan"]);
    let explicit = toric(&["tree", "--diagonals", "1,3", "1,4", "1,5"]);
    assert_eq!(stdout_json(&fan), stdout_json(&explicit));
    // byte-identical output for an integer-only subcommand
    let again = toric(&["tree", "--n", "6", "--fan"]);
    assert_eq!(fan.stdout, again.stdout);
}

#[test]
fn tree_usage_errors_exit_2() {
    let out = toric(&["tree"]);
    assert_eq!(out.status.code(), Some(1)); // missing mode is a domain error
    let out = toric(&["tree", "--n"]);
    assert_eq!(out.status.code(), Some(2)); // clap usage error
    let out = toric(&["nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kempe_product_and_straighten() {
    let dir = std::env::temp_dir().join(format!("toric-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let tree = dir.join("tree.json");
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    let out = toric(&["tree", "--n", "4", "--fan", "--out", tree.to_str().unwrap()]);
    assert!(out.status.success());
    std::fs::write(&a, r#"{"n":4,"edges":[[1,3,1]]}"#).unwrap();
    std::fs::write(&b, r#"{"n":4,"edges":[[2,4,1]]}"#).unwrap();

    let product = stdout_json(&toric(&[
        "kempe",
        "product",
        "--tree",
        tree.to_str().unwrap(),
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ]));
    assert_eq!(product["edges"], serde_json::json!([[1, 4, 1], [2, 3, 1]]));

    let expansion = stdout_json(&toric(&[
        "pluecker",
        "straighten",
        "--tree",
        tree.to_str().unwrap(),
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ]));
    let terms = expansion["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    let weights: Vec<u64> = terms.iter().map(|t| t["weight"].as_u64().unwrap()).collect();
    assert!(weights.contains(&4) && weights.contains(&6));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn initial_ideal_from_n() {
    let doc = stdout_json(&toric(&["pluecker", "initial-ideal", "--n", "5"]));
    let quadrics = doc["quadrics"].as_array().unwrap();
    assert_eq!(quadrics.len(), 5); // C(5,4)
    for q in quadrics {
        assert_eq!(q["initial_form"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn polygon_sample_is_deterministic_and_bends() {
    let run1 = toric(&["polygon", "sample", "--r", "1,1,1,1,1,1", "--seed", "7"]);
    let run2 = toric(&["polygon", "sample", "--r", "1,1,1,1,1,1", "--seed", "7"]);
    assert!(run1.status.success());
    assert_eq!(run1.stdout, run2.stdout);

    let polygon = String::from_utf8(run1.stdout).unwrap();
    let bent = toric_with_stdin(&["polygon", "bend", "--diag", "1,4", "--theta", "0.3"], &polygon);
    let doc = stdout_json(&bent);
    let edges = doc["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 6);

    let infeasible = toric(&["polygon", "sample", "--r", "3,1,1"]);
    assert_eq!(infeasible.status.code(), Some(1));
}

#[test]
fn strata_of_sampled_hexagon_is_generic() {
    let dir = std::env::temp_dir().join(format!("toric-strata-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let tree = dir.join("tree.json");
    toric(&["tree", "--n", "6", "--fan", "--out", tree.to_str().unwrap()]);
    let sample = toric(&["polygon", "sample", "--r", "1,1,1,1,1,1", "--seed", "3"]);
    let sig = stdout_json(&toric_with_stdin(
        &["polygon", "strata", "--tree", tree.to_str().unwrap()],
        &String::from_utf8(sample.stdout).unwrap(),
    ));
    assert_eq!(sig["zero_diagonals"].as_array().unwrap().len(), 0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn frames_pipeline_roundtrip() {
    let dir = std::env::temp_dir().join(format!("toric-frames-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let tree = dir.join("tree.json");
    toric(&["tree", "--n", "4", "--fan", "--out", tree.to_str().unwrap()]);

    // a planar unit square lifted by hand: columns √(2λ)(a, b)
    let edges = dir.join("edges.json");
    let s = 2.0_f64.sqrt() * 2.0; // λ = 2·‖e‖ = 2, √(2λ) = 2
    let lift = |d: [f64; 3]| -> [[f64; 2]; 2] {
        let a = ((1.0 + d[0]) / 2.0_f64).sqrt();
        if a > 0.0 {
            [[s * a, 0.0], [s * d[1] / (2.0 * a), s * d[2] / (2.0 * a)]]
        } else {
            [[0.0, 0.0], [s, 0.0]]
        }
    };
    let cols = vec![
        lift([1.0, 0.0, 0.0]),
        lift([0.0, 1.0, 0.0]),
        lift([-1.0, 0.0, 0.0]),
        lift([0.0, -1.0, 0.0]),
    ];
    std::fs::write(&edges, serde_json::json!({ "cols": cols }).to_string()).unwrap();

    let framing = dir.join("framing.json");
    let out = toric(&[
        "frames",
        "extend",
        "--tree",
        tree.to_str().unwrap(),
        "--edges",
        edges.to_str().unwrap(),
        "--out",
        framing.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let check = stdout_json(&toric(&[
        "frames",
        "check",
        "--in",
        framing.to_str().unwrap(),
    ]));
    assert_eq!(check["normalized"], serde_json::json!(true));
    for r in check["tripod_residuals"].as_array().unwrap() {
        assert!(r.as_f64().unwrap() < 1e-9);
    }
    // each leaf λ = 2·‖e‖ = 2; the diagonal λ = 2·√2
    for h in check["ledger"].as_array().unwrap() {
        let lambda = h["lambda"].as_f64().unwrap();
        let geometric = h["geometric"].as_f64().unwrap();
        assert!((lambda - geometric).abs() < 1e-9);
    }

    let bent = toric(&[
        "frames",
        "bend",
        "--edge",
        "4",
        "--theta",
        "0.5",
        "--in",
        framing.to_str().unwrap(),
    ]);
    assert!(bent.status.success(), "{}", String::from_utf8_lossy(&bent.stderr));

    let pipeline = stdout_json(&toric(&[
        "pipeline",
        "--tree",
        tree.to_str().unwrap(),
        "--edges",
        edges.to_str().unwrap(),
    ]));
    assert!(pipeline["max_ledger_deviation"].as_f64().unwrap() < 1e-9);
    assert_eq!(pipeline["stratum"].as_array().unwrap().len(), 0);

    // non-closing edges exit 1 with the residual on stderr
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        serde_json::json!({ "cols": vec![[[2.0, 0.0], [0.0, 0.0]]; 4] }).to_string(),
    )
    .unwrap();
    let out = toric(&[
        "pipeline",
        "--tree",
        tree.to_str().unwrap(),
        "--edges",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("residual"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_subcommand_exit_codes() {
    let ok = toric(&["verify", "--suite", "bending", "--trials", "10", "--seed", "1"]);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(doc["suite"], "bending");
    assert_eq!(doc["cases"], 10);
    assert_eq!(doc["failures"].as_array().unwrap().len(), 0);

    // deterministic under a fixed seed
    let again = toric(&["verify", "--suite", "bending", "--trials", "10", "--seed", "1"]);
    assert_eq!(ok.stdout, again.stdout);

    let unknown = toric(&["verify", "--suite", "bogus"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn verify_semigroup_small() {
    let out = toric(&[
        "verify",
        "--suite",
        "semigroup",
        "--n-max",
        "5",
        "--trials",
        "20",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["cases"].as_u64().unwrap() > 100);
}
