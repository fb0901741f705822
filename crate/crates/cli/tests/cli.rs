use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn holant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holant")).args(args).env_remove("HOLANT_CACHE_DIR").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = holant(&a);
    assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("json output")
}

const THETA_GP: &str = r#"{"kappa": 3, "signatures": [{"kind": "tau3", "values": ["2", "-1", "2"]}],
 "vertices": [{"sig": 0, "edges": [0, 1, 2]}, {"sig": 0, "edges": [2, 1, 0]}],
 "edges": [[[0, 0], [1, 2]], [[0, 1], [1, 1]], [[0, 2], [1, 0]]]}"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn classify_hard_record() {
    let v = json(&["classify", "--kappa", "3", "--abc", "0,0,1"]);
    assert_eq!(v["schema"], "holant.classify/1");
    assert_eq!(v["verdict"], "Hard");
    assert!(v["route"].is_string());
    let v = json(&["classify", "--kappa", "4", "--abc", "-3-4*i,1,-1+2*i"]);
    assert_eq!(v["verdict"], "Tractable");
    assert_eq!(v["case"], 5);
    assert_eq!(v["evaluator"], "hadamard-k4");
}

#[test]
fn color_count_k4() {
    let o = holant(&["color", "count", "--graph", "k4.json", "--kappa", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "6");
    assert_eq!(json(&["color", "count", "--graph", "bridged-cubic", "--kappa", "3"])["count"], "0");
}

#[test]
fn verify_formulas_all_verified() {
    let v = json(&["verify-formulas", "--kappa", "3", "--trials", "5", "--seed", "7"]);
    let rows = v["gadgets"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r["agreements"] == 5 && r["mismatch"].is_null()));
}

#[test]
fn json_is_byte_identical_across_runs_and_workers() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write(dir.path(), "g.json", THETA_GP);
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify-formulas", "--kappa", "3", "--trials", "3", "--seed", "11", "--json"],
        vec!["eval", "--grid", &grid, "--method", "brute", "--json"],
        vec!["interp", "demo-coloring", "--graph", "c3", "--kappa", "3", "--json"],
    ];
    for args in cases {
        let base = stdout(&holant(&args));
        for w in ["1", "2", "3"] {
            let mut a = args.clone();
            a.extend(["--workers", w]);
            assert_eq!(stdout(&holant(&a)), base, "{args:?} with {w} workers");
        }
    }
}

#[test]
fn eval_methods_agree_with_brute_force() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write(dir.path(), "g.json", THETA_GP);
    for m in ["auto", "brute", "gp"] {
        let v = json(&["eval", "--grid", &grid, "--method", m, "--compare"]);
        assert_eq!(v["value"], "54", "{m}");
        assert_eq!(v["agrees"], true);
    }
    // The signature is not an equality, so that evaluator refuses it.
    assert_eq!(code(&holant(&["eval", "--grid", &grid, "--method", "equality"])), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&holant(&["--help"])), 0);
    assert_eq!(code(&holant(&["--version"])), 0);
    assert_eq!(code(&holant(&["frobnicate"])), 1);
    assert_eq!(code(&holant(&["classify", "--kappa", "3"])), 1);
    assert_eq!(code(&holant(&["classify", "--kappa", "3", "--abc", "1,2"])), 1);
    assert_eq!(code(&holant(&["gadget", "no-such", "--kappa", "3", "--abc", "1,2,3"])), 1);
    assert_eq!(code(&holant(&["gadget", "anti-gadget", "--kappa", "3", "--abc", "1,2,3"])), 1);
    assert_eq!(code(&holant(&["color", "count", "--graph", "missing.json", "--kappa", "3"])), 1);
}

#[test]
fn mismatch_exits_two() {
    let o = holant(&["color", "count", "--graph", "k4", "--kappa", "3", "--expect", "7"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("MISMATCH"));
    assert_eq!(code(&holant(&["color", "count", "--graph", "k4", "--kappa", "3", "--expect", "6"])), 0);
    let dir = tempfile::tempdir().unwrap();
    let grid = write(dir.path(), "g.json", THETA_GP);
    assert_eq!(code(&holant(&["eval", "--grid", &grid, "--compare", "--expect", "-54"])), 2);
    let v: Value = serde_json::from_str(&stdout(&holant(&["tutte", "--graph", "c3", "--x", "5", "--y", "5", "--expect", "35", "--json"]))).unwrap();
    assert_eq!(v["matches_expected"], true);
}

#[test]
fn exact_mode_refuses_float_input() {
    let o = holant(&["classify", "--kappa", "3", "--abc", "1.5,2,3"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("exact mode"));
    let v = json(&["classify", "--kappa", "3", "--abc", "1.5,2,3", "--mode", "float"]);
    assert_eq!(v["approximate"], true);
}

#[test]
fn gadget_with_cyclotomic_input() {
    let v = json(&["gadget", "local-holo", "--kappa", "3", "--abc", "[1,0,1,0],2,w", "--xy", "1,[0,1,0,0]"]);
    assert_eq!(v["agrees"], true);
    assert_eq!(v["exhaustive"], true);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", "format = \"json\"\nseed = 5\n");
    let o = holant(&["--config", &cfg, "verify-formulas", "--kappa", "3", "--trials", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 5);
    let o = holant(&["--config", &cfg, "verify-formulas", "--kappa", "3", "--trials", "1", "--seed", "8"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 8);
    let bad = write(dir.path(), "bad.toml", "mode = \"fuzzy\"\n");
    assert_eq!(code(&holant(&["--config", &bad, "classify", "--kappa", "3", "--abc", "0,0,1"])), 1);
}

#[test]
fn tutte_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_holant"))
            .args(["tutte", "--graph", "k4", "--x", "4", "--y", "4", "--json"])
            .env("HOLANT_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(code(&first), 0);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["value"], "304");
}

#[test]
fn medial_and_interp_matrix() {
    let v = json(&["medial", "--graph", "k4", "--directed"]);
    assert_eq!(v["medial"]["n"], 6);
    assert_eq!(v["alternates"], true);
    let v = json(&["interp", "matrix", "--construction", "coloring", "--kappa", "4"]);
    assert_eq!(v["matches_table"], true);
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 5);
    let v = json(&["interp", "matrix", "--construction", "weave", "--kappa", "4"]);
    assert_eq!(v["space"], "tau4");
    assert_eq!(v["matches_table"], true);
}

#[test]
fn construction_file() {
    // The pass-through construction: the hole with its inputs dangling.
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"hole": 0, "gate": {"kappa": 3,
        "signatures": [{"kind": "tau4", "values": ["0","0","0","0","0","0","0","0","0"]}],
        "vertices": [{"sig": 0, "edges": [0, 1, 2, 3]}],
        "edges": [[[0,0],"dangling",0], [[0,1],"dangling",1], [[0,2],"dangling",2], [[0,3],"dangling",3]]}}"#;
    let f = write(dir.path(), "c.json", text);
    let v = json(&["interp", "matrix", "--construction", &f, "--space", "tau4"]);
    let m = v["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 9);
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(x, if i == j { "1" } else { "0" });
        }
    }
}

#[test]
fn certify_suites() {
    for suite in ["fixtures", "identities", "dedekind", "roots"] {
        let v = json(&["certify", "--suite", suite]);
        assert!(v["reports"].as_array().unwrap().iter().all(|r| r["status"] != "falsified_with"), "{suite}");
    }
    let v = json(&["certify", "--suite", "p-solutions", "--bound", "300"]);
    assert_eq!(v["reports"][0]["status"], "checked_up_to");
}

#[test]
fn schema_lists_every_record() {
    let o = holant(&["--schema"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for k in ["holant.eval/1", "holant.classify/1", "holant.certify/1", "holant.verify-formulas/1"] {
        assert!(v["records"].get(k).is_some(), "{k}");
    }
    assert!(v["inputs"]["grid"].is_object());
}
