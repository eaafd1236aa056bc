use std::process::{Command, Output};

use serde_json::Value;

fn noncyclic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noncyclic"))
        .args(args)
        .env_remove("NONCYCLIC_BUDGET")
        .env_remove("NONCYCLIC_CONFIG")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = noncyclic(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn verify_all_is_byte_identical_across_runs() {
    let args = [
        "verify",
        "all",
        "--seed",
        "7",
        "--max-order",
        "60",
        "--json",
    ];
    let a = noncyclic(&args);
    let b = noncyclic(&args);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stdout)
    );
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["schema"], "noncyclic.verify/1");
    assert_eq!(report["summary"]["failed"], 0);
}

#[test]
fn info_quaternion() {
    let v = json(&["info", "Q8", "--json"]);
    assert_eq!(v["order"], 8);
    assert_eq!(v["exponent"], 4);
    assert_eq!(v["cyclizer_size"], 2);
    assert_eq!(v["tag"], "Cat3");
    let counts = v["cyclic_subgroup_counts"].as_array().unwrap();
    assert!(counts.contains(&serde_json::json!([4, 3])));
}

#[test]
fn info_z4_z2_and_cyclic_warning() {
    let v = json(&["info", "Z4 x Z2", "--json"]);
    assert_eq!(v["cyclizer_size"], 1);
    assert_eq!(v["graph_vertices"], 7);

    let out = noncyclic(&["info", "Z6"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty"));
}

#[test]
fn hamiltonian_json_is_verified() {
    let v = json(&["hamiltonian", "Z4 x Z2", "--method", "both", "--json"]);
    assert_eq!(v["n_vertices"], 7);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    for r in results {
        assert_eq!(r["verified"], true);
        assert_eq!(r["cycle"].as_array().unwrap().len(), 7);
    }
}

#[test]
fn dot_and_json_outputs_are_stable() {
    for args in [
        &["graph", "D8 x Z3"][..],
        &["graph", "Q8", "--json"],
        &["hamiltonian", "SD16", "--dot"],
    ] {
        let a = noncyclic(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, noncyclic(args).stdout, "{args:?}");
    }
    let dot = String::from_utf8(noncyclic(&["graph", "Z2 x Z2"]).stdout).unwrap();
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 3);
}

#[test]
fn codes_on_d8() {
    let v = json(&["codes", "D8", "--oracle", "--json"]);
    for r in v["results"].as_array().unwrap() {
        match r["kind"].as_str().unwrap() {
            "Perfect" => assert_eq!(r["vertices"], serde_json::json!(["b"])),
            _ => assert_eq!(r["status"], "ProvenAbsent"),
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(noncyclic(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(noncyclic(&["info", "Z4 x Foo"]).status.code(), Some(2));
    assert_eq!(
        noncyclic(&["verify", "counts", "--max-order", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        noncyclic(&["hamiltonian", "Dih5", "--method", "constructive"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        noncyclic(&[
            "hamiltonian",
            "Dih7",
            "--method",
            "backtrack",
            "--budget",
            "3"
        ])
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn budget_from_env_and_config_with_flag_precedence() {
    let run = |args: &[&str], env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_noncyclic"));
        cmd.args(args).env_remove("NONCYCLIC_CONFIG");
        match env {
            Some(b) => cmd.env("NONCYCLIC_BUDGET", b),
            None => cmd.env_remove("NONCYCLIC_BUDGET"),
        };
        cmd.output().unwrap().status.code()
    };
    let ham = ["hamiltonian", "Dih7", "--method", "backtrack"];
    assert_eq!(run(&ham, Some("3")), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("noncyclic.toml");
    std::fs::write(&path, "budget = 3\n").unwrap();
    let path = path.to_str().unwrap();
    let mut with_config = vec!["--config", path];
    with_config.extend(ham);
    assert_eq!(run(&with_config, None), Some(3));
    with_config.extend(["--budget", "1000000"]);
    assert_eq!(run(&with_config, None), Some(0));

    std::fs::write(dir.path().join("bad.toml"), "budgte = 3\n").unwrap();
    let bad = dir.path().join("bad.toml");
    assert_eq!(
        run(
            &["--config", bad.to_str().unwrap(), "catalog", "suites"],
            None
        ),
        Some(2)
    );
}

#[test]
fn catalog_lists_specs_and_suites() {
    let v = json(&[
        "catalog",
        "list",
        "--max-order",
        "16",
        "--nilpotent",
        "--json",
    ]);
    let specs: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["spec"].as_str().unwrap())
        .collect();
    assert!(specs.contains(&"Q8") && specs.contains(&"Z2 x Z4") && specs.contains(&"SD16"));
    assert!(!specs.contains(&"Z8") && !specs.contains(&"Dih3"));

    let out = noncyclic(&["catalog", "suites"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
}
