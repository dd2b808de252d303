//! End-to-end checks of the k3lat binary: exit codes, JSON shapes,
//! determinism, and the wire formats of the external interfaces.

use std::process::{Command, Output};

fn k3lat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3lat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn lattice_info_e8_has_signature_0_8() {
    let out = k3lat(&["lattice", "info", "e8-minus"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["signature"], serde_json::json!([0, 8, 0]));
    assert_eq!(v["even"], serde_json::json!(true));
    assert_eq!(v["det"], serde_json::json!(1));
}

#[test]
fn lattice_info_l1_reports_disc_group() {
    let out = k3lat(&["lattice", "info", "l1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["signature"], serde_json::json!([3, 7, 0]));
    assert_eq!(
        v["disc_group"]["invariant_factors"],
        serde_json::json!(["3", "3"])
    );
    let mut qv: Vec<String> = v["q_values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    qv.sort();
    assert_eq!(qv, vec!["1/3", "2/3"]);
}

#[test]
fn empty_argv_is_usage_error() {
    let out = k3lat(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = k3lat(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_lattice_is_reported() {
    let out = k3lat(&["lattice", "info", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope"));
}

#[test]
fn glue_fixture_builds_k3_shape() {
    let out = k3lat(&["glue", "--l1", "kummer", "--l2", "torus"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["outputs"]["signature"], serde_json::json!([3, 19, 0]));
    assert_eq!(v["tool_version"], serde_json::json!(env!("CARGO_PKG_VERSION")));
}

#[test]
fn glue_accepts_external_phi_file() {
    // The McMullen glue map written out as the documented wire format.
    let phi = serde_json::json!({
        "gens1": [
            ["2/3", "0", "1/3", "1/3", "1/3", "0", "0", "1/3", "1/3", "0"],
            ["1/3", "2/3", "2/3", "0", "1/3", "1/3", "0", "0", "1/3", "1/3"]
        ],
        "gens2": [
            ["1/3", "2/3", "0", "0"],
            ["0", "0", "1/3", "2/3"]
        ],
        "orders": [3, 3],
        "phi": [[1, 0], [0, 1]]
    });
    let path = std::env::temp_dir().join("k3lat_test_phi.json");
    std::fs::write(&path, serde_json::to_string(&phi).unwrap()).unwrap();
    let out = k3lat(&["glue", "--l1", "l1", "--l2", "l2", "--phi", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["outputs"]["signature"], serde_json::json!([3, 11, 0]));
}

#[test]
fn coxeter_e10_prints_lehmer() {
    let out = k3lat(&["coxeter", "--lattice", "e10"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(
        v["char_poly"],
        serde_json::json!("t^10 + t^9 - t^7 - t^6 - t^5 - t^4 - t^3 + t + 1")
    );
}

#[test]
fn roots_dominant_and_disjoint() {
    let out = k3lat(&["roots", "--lattice", "d-blowup", "--dominant", "--max-disjoint"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["count"], serde_json::json!(240));
    assert_eq!(v["dominant"], serde_json::json!([-3, -2, -4, -6, -5, -4, -3, -2]));
    assert_eq!(v["max_disjoint"], serde_json::json!(4));
}

#[test]
fn period_from_params_round_trip() {
    let params = serde_json::json!({
        "a_alpha": "1/3",
        "a_beta": "-2/7",
        "c_minus": [{}, {}, {}, {}, {}, {}, {}, {}],
        "c_plus": [{}, {}, {}, {}, {}, {}, {}, {}],
        "gamma9": {"im": "5/3", "re": "1/2"},
        "lambda": 0,
        "tau": {"im": 1, "re": 0},
        "x": {"im": "9/2", "re": "-4/5"}
    });
    let path = std::env::temp_dir().join("k3lat_test_params.json");
    std::fs::write(&path, serde_json::to_string(&params).unwrap()).unwrap();
    let out = k3lat(&["period", "from-params", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    // b_beta normalized to 1, b_alpha = tau.
    assert_eq!(v["coeffs"]["B_b"], serde_json::json!({"im": 0, "re": 1}));
    assert_eq!(v["coeffs"]["B_a"], serde_json::json!({"im": 1, "re": 0}));

    // Feed the period back into the realizability check.
    let period_path = std::env::temp_dir().join("k3lat_test_period.json");
    std::fs::write(&period_path, &out.stdout).unwrap();
    let out2 = k3lat(&[
        "period",
        "realizable",
        "--xi",
        period_path.to_str().unwrap(),
        "--p=1/3",
        "--q=-2/7",
    ]);
    let v2 = stdout_json(&out2);
    assert_eq!(v2["orthogonal_to_v"], serde_json::json!(true));
    assert_eq!(v2["isotropic"], serde_json::json!(true));
}

#[test]
fn period_picard_fixture_has_rank_17() {
    let out = k3lat(&["period", "picard", "blowup-example"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["rank"], serde_json::json!(17));
    assert_eq!(v["negative_definite"], serde_json::json!(true));
}

#[test]
fn period_picard_reads_symbolic_json() {
    // sigma = s * A_bg: a single functional, kernel rank 21.
    let sigma = serde_json::json!({
        "coeffs": {"A_bg": {"s": 1}},
        "symbols": ["s"]
    });
    let path = std::env::temp_dir().join("k3lat_test_sigma.json");
    std::fs::write(&path, serde_json::to_string(&sigma).unwrap()).unwrap();
    let out = k3lat(&["period", "picard", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["rank"], serde_json::json!(21));
}

#[test]
fn dioph_rational_pair_exits_nonzero_with_witness() {
    let out = k3lat(&["dioph", "check", "--p", "1/2", "--q", "1/3", "--nmax", "100"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert!(v["verdict"].as_str().unwrap().contains("witness: 6"));
}

#[test]
fn dioph_cbrt2_passes_with_certificate() {
    let out = k3lat(&[
        "dioph", "check", "--p", "0", "--q=-cbrt(2)", "--nmax", "2000",
        "--minpoly=-2,0,0,1", "--root-lo", "1", "--root-hi", "2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], serde_json::json!("Pass"));
    assert_eq!(v["certificate"]["alpha"], serde_json::json!(2));
}

#[test]
fn majorant_csv_output() {
    let out = k3lat(&[
        "majorant", "--equation", "arnold-z", "--p", "0", "--q", "phi", "--k", "2",
        "--m", "3", "--big-q", "1/2", "--terms", "6", "--csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("n,A_n\n"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let a = k3lat(&["lattice", "info", "k3"]);
    let b = k3lat(&["lattice", "info", "k3"]);
    assert_eq!(a.stdout, b.stdout, "byte-identical reruns");
    // parse -> emit -> byte-equal (keys are emitted sorted)
    let v = stdout_json(&a);
    let re_emitted = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(re_emitted.as_bytes(), &a.stdout[..]);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join("k3lat_test_out.json");
    let _ = std::fs::remove_file(&path);
    let out = k3lat(&["lattice", "info", "u", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["signature"], serde_json::json!([1, 1, 0]));
}

#[test]
fn verify_paper_is_green_and_fault_injection_fails() {
    let out = k3lat(&["verify-paper", "--seed", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("OK:"));
    assert!(!text.contains("\nFAIL "));

    let out = k3lat(&["verify-paper", "--corrupt-e8"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL"));
}
