use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enriques-cert")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn all_passes_with_exit_zero() {
    let o = cli(&["all"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["stages"].as_array().unwrap().len(), 9);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["version", "options", "stages", "verdict"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("verdict: pass"));
}

#[test]
fn reports_are_byte_identical() {
    let a = cli(&["all"]).stdout;
    let b = cli(&["all", "--sequential"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn out_file_and_single_stage() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = cli(&["fibrations", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let claims = v["stages"][0]["evidence"]["claims"].as_array().unwrap();
    let observed: Vec<&str> = claims.iter().filter_map(|c| c["observed"].as_str()).collect();
    for t in ["I8", "IV*"] {
        assert!(observed.contains(&t));
    }
}

#[test]
fn canonical_coefficients() {
    let v = json(&cli(&["canonical"]));
    assert_eq!(v["stages"][0]["evidence"]["data"]["bicanonical"], serde_json::json!({"Einf'": "2", "E321": "4", "E322": "4", "E323": "4"}));
}

#[test]
fn nonfg_respects_max_gens() {
    let v = json(&cli(&["nonfg", "--max-gens", "3"]));
    let claims = v["stages"][0]["evidence"]["claims"].as_array().unwrap();
    assert!(claims.iter().any(|c| c["observed"] == "1, 2, 3"));
    assert_eq!(v["options"]["max_gens"], "3");
}

#[test]
fn corrupted_pairing_exits_one() {
    let o = cli(&["config", "--override", "E2,C32,0"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("(E2, C32)"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&["bogus"]).status.code(), Some(2));
    assert_eq!(cli(&["all", "--max-gens", "0"]).status.code(), Some(2));
    assert_eq!(cli(&["all", "--override", "E2,C32"]).status.code(), Some(2));
}

#[test]
fn stage_list() {
    let o = cli(&["--stage-list"]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = String::from_utf8_lossy(&o.stdout).lines().map(String::from).collect();
    assert_eq!(names, ["config", "cremona", "quotient", "fibrations", "lattice", "heights", "canonical", "dynamics", "nonfg"]);
}
