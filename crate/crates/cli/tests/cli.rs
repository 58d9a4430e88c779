use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn posner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posner")).args(args).output().expect("binary runs")
}

fn manifest(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel).to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("posner-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn seeded_runs_are_byte_identical() {
    let dir = scratch("determinism");
    let cfg = write(
        &dir,
        "rot.json",
        r#"{"experiment": "random_rotation", "params": {"samples": 300}, "seed": 99}"#,
    );
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for out in [&a, &b] {
        let o = posner(&["run", &cfg, "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["seed"], 99);
    assert_eq!(v["values"]["mean"]["pass"], true);
}

#[test]
fn binding_table_writes_to_the_configured_path() {
    let dir = scratch("binding");
    let cfg = write(&dir, "cfg.json", r#"{"experiment": "binding_table", "output": {"path": "out/t.json"}}"#);
    let o = posner(&["run", &cfg]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("out/t.json")).unwrap()).unwrap();
    assert_eq!(v["values"]["no_singlets"]["exact"], "43/128");
    assert_eq!(v["values"]["six_cross_singlets"]["paper_target"], 1.0);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = scratch("usage");
    let unknown = write(&dir, "u.json", r#"{"experiment": "teleportation"}"#);
    assert_eq!(code(&posner(&["run", &unknown])), 2);
    let unseeded = write(&dir, "s.json", r#"{"experiment": "cascade_identity", "params": {"states": 1}}"#);
    assert_eq!(code(&posner(&["run", &unseeded])), 2);
    let malformed = write(&dir, "m.json", "{ not json");
    assert_eq!(code(&posner(&["run", &malformed])), 2);
    assert_eq!(code(&posner(&["run", "/nonexistent/config.json"])), 2);
    assert_eq!(code(&posner(&["estimate", "diffusion", "--r", "0"])), 2);
    assert_eq!(code(&posner(&["frobnicate"])), 2);
}

#[test]
fn failed_checks_exit_with_three() {
    let dir = scratch("failure");
    // The qutrit σ^z constant is 0 against a published 1/12.
    let cfg = write(&dir, "codes.json", r#"{"experiment": "codes"}"#);
    let o = posner(&["run", &cfg]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("codes/qutrit_c_sigma_z"));
}

#[test]
fn weight_curve_csv_has_formula_columns() {
    let dir = scratch("curve");
    let cfg = write(&dir, "c.json", r#"{"experiment": "weight_curve", "params": {"samples": 5}, "output": {"format": "csv"}}"#);
    let o = posner(&["run", &cfg]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,w0,w1,w2,w0_formula,w1_formula,w2_formula"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn lattice_files_resolve_relative_to_the_config() {
    let o = posner(&["run", &manifest("configs/aklt_ring.json")]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["values"]["site_three_halves_pair"]["value"].as_array().unwrap().len(), 3);
}

#[test]
fn estimates_report_order_of_magnitude() {
    let o = posner(&["estimate", "rotation"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["estimates"][0]["name"], "t_rot");
    assert_eq!(v["estimates"][0]["order_of_magnitude"], 1.0);
    let o = posner(&["estimate", "diffusion", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("name,value,unit,order_of_magnitude\nD,"));
    assert!(text.contains("t_diff,") && text.trim_end().ends_with(",0.0001"));
}

#[test]
fn tables_dump_four_files() {
    let dir = scratch("tables");
    let o = posner(&["tables", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let rows = |name: &str| std::fs::read_to_string(dir.join(name)).unwrap().lines().count();
    assert_eq!(rows("trio_basis.csv"), 9);
    assert_eq!(rows("charge_tau0.csv"), 25);
    assert_eq!(rows("charge_tau1.csv"), 21);
    assert_eq!(rows("charge_tau2.csv"), 21);
}

#[test]
fn scripts_replay_and_require_a_seed_when_unseeded() {
    let program = manifest("scripts/fisher_narrative.json");
    assert_eq!(code(&posner(&["script", &program])), 2);
    let a = posner(&["script", &program, "--seed", "5"]);
    let b = posner(&["script", &program, "--seed", "5"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 5);
}

#[test]
fn bundled_acceptance_config_runs_end_to_end() {
    let o = posner(&["run", &manifest("configs/acceptance.json")]);
    let results: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut failed = Vec::new();
    for r in results.as_array().unwrap() {
        for (name, row) in r["values"].as_object().unwrap() {
            if row["pass"] == false {
                failed.push(format!("{}/{name}", r["experiment"].as_str().unwrap()));
            }
        }
    }
    // Only the qutrit σ^z constant departs from its published value.
    assert_eq!(failed, ["codes/qutrit_c_sigma_z"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn conditional_binding_script_projects_the_third_posner() {
    let o = posner(&["script", &manifest("scripts/conditional_binding.json")]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let w = &v["steps"][14]["result"]["weights"];
    assert!((w[0].as_f64().unwrap() - 1.0).abs() < 1e-9, "{w}");
}
