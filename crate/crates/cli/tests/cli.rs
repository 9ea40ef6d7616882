use std::process::{Command, Output};

use serde_json::Value;

fn k3cert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3cert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn nv_of_i_star_1() {
    let out = k3cert(&["nv", "--type", "I*_1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["N_v"], 4);
    assert_eq!(v["schema"], 1);
}

#[test]
fn nv_options() {
    let v = json(&k3cert(&["nv", "--type", "IV*", "--a2", "3", "--omit", "0"]));
    assert_eq!(v["N_v_a2"], 3);
    assert!(v["N_v_omit"].is_u64());
}

#[test]
fn enumerate_budget_24() {
    let out = k3cert(&["enumerate", "--budget", "24", "--summary"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["max"], 12);
    assert_eq!(
        v["types_at_max"],
        serde_json::json!(["I_2n", "I*_2n", "I*_1", "IV*", "III*"])
    );
}

#[test]
fn seed_is_echoed_and_output_is_deterministic() {
    let a = k3cert(&["quartic", "census", "--seed", "11"]);
    let b = k3cert(&["quartic", "census", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 11);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 12);
}

#[test]
fn unknown_label_is_an_input_error() {
    let out = k3cert(&["lattice", "gram", "--lattice", "F4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "unknown_label");
}

#[test]
fn usage_errors_are_json() {
    let out = k3cert(&["nv"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "usage");
}

#[test]
fn refutation_exits_with_1() {
    // A smooth fibre cannot be of type I*_0.
    let out = k3cert(&[
        "wmodel", "delta", "--random", "--seed", "3", "--place", "inf", "--type", "I*_0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "refuted");
}

#[test]
fn budget_overrun_exits_with_3() {
    let out = k3cert(&["lattice", "factor-through", "7", "--max-rank", "13"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "not_checked");
}

#[test]
fn verify_all_subset_in_text() {
    let out = k3cert(&["verify-all", "--only", "1,15,16", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), 3);
    // Progress goes to stderr only.
    assert!(String::from_utf8(out.stderr).unwrap().contains("[3/3]"));
}

#[test]
fn lattice_subcommands() {
    let v = json(&k3cert(&["lattice", "roots", "--lattice", "E6"]));
    assert_eq!(v["count"], 72);
    let v = json(&k3cert(&["lattice", "disc", "--lattice", "D6"]));
    assert_eq!(v["invariant_factors"], serde_json::json!([2, 2]));
    let v = json(&k3cert(&[
        "lattice", "complement", "--lattice", "D6", "--vectors", "1,0,0,0,0,0",
    ]));
    assert_eq!(v["complement_rank"], 5);
    let v = json(&k3cert(&["lattice", "embed-a1", "6", "--lattice", "D6"]));
    assert_eq!(v["min_index"], 4);
}

#[test]
fn parity_for_a_maximal_set_in_d6() {
    let ex = json(&k3cert(&["lattice", "embed-a1", "6", "--lattice", "D6"]));
    let rows: Vec<String> = ex["example"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    let out = k3cert(&[
        "lattice", "parity", "--lattice", "D6", "--vectors", &rows.join(";"), "--k", "1,2,3,1,2,3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "verified");
    assert!(!v["subgroups"].as_array().unwrap().is_empty());
}

#[test]
fn model_and_params_files_round_trip() {
    let dir = std::env::temp_dir().join(format!("k3cert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let model = json(&k3cert(&["wmodel", "disc", "--random", "--seed", "5"]))["model"].clone();
    let mpath = dir.join("model.json");
    std::fs::write(&mpath, model.to_string()).unwrap();
    let out = k3cert(&["wmodel", "disc", "--input", mpath.to_str().unwrap()]);
    assert_eq!(json(&out)["status"], "verified");

    let fam = json(&k3cert(&["quartic", "build", "--seed", "7"]));
    let ppath = dir.join("params.json");
    std::fs::write(&ppath, fam["params"].to_string()).unwrap();
    let out = k3cert(&["quartic", "scan", "--params", ppath.to_str().unwrap()]);
    assert_eq!(json(&out)["count"], 12);

    let opath = dir.join("out.json");
    let out = k3cert(&["quartic", "dwork-check", "--output", opath.to_str().unwrap()]);
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_slice(&std::fs::read(&opath).unwrap()).unwrap();
    assert_eq!(written["status"], "verified");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn worker_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_k3cert"))
        .args(["lattice", "two-length", "--lattice", "E7"])
        .env("K3CERT_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(json(&out)["two_length"], 1);
    let out = Command::new(env!("CARGO_BIN_EXE_k3cert"))
        .args(["lattice", "two-length", "--lattice", "E7"])
        .env("K3CERT_WORKERS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
