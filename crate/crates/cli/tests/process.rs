use std::process::{Command, Output};

fn mzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzv")).args(args).env_remove("MZV_MAX_CUTOFF").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn dual_of_one_two() {
    let o = mzv(&["dual", "1,2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");
    let o = mzv(&["dual", "1,1,4"]);
    assert_eq!(stdout(&o).trim(), "1,1,4");
}

#[test]
fn dual_rejects_bad_input() {
    let o = mzv(&["dual", "2,1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mzv(&["dual", "1,,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 3"));
}

#[test]
fn eval_reports_value_and_bound() {
    let o = mzv(&["eval", "zetastar(1,2) - 2*zeta(3)", "--eps", "1e-8", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let (value, bound) = (v["value"].as_f64().unwrap(), v["error_bound"].as_f64().unwrap());
    assert!(value.abs() <= bound + 1e-12, "{value} {bound}");
    assert!(bound < 1e-8);

    let o = mzv(&["eval", "zeta(2)"]);
    let s = stdout(&o);
    assert!(s.contains("value    1.6449340668482"), "{s}");
    assert!(s.contains("bound"));
}

#[test]
fn eval_parse_error_exits_nonzero() {
    let o = mzv(&["eval", "zeta(2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1, column 7"));
    let o = mzv(&["eval", "zeta(1)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cutoff_env_is_a_global_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_mzv"))
        .args(["eval", "zeta(1,2)", "--method", "direct", "--json"])
        .env("MZV_MAX_CUTOFF", "1000")
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cutoff"], 1000);
    assert_eq!(v["converged"], false);
}

#[test]
fn expand_prints_combination() {
    let o = mzv(&["expand", "zu", "--upper", "3", "--lower", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "zu(3; 1) = zeta(4) + zeta(1,3)");
    let o = mzv(&["expand", "zb", "--upper", "2,3", "--lower", "1,1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["form"], "zb(2,3; 1,1)");
}

#[test]
fn verify_single_instance() {
    let o = mzv(&["verify", "thm1", "--param", "m=1", "--param", "n=3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("PASS"), "{s}");
    assert!(s.contains("zetastar(1,1,3) + zetastar(2,1,2) = 4*zeta(5)"), "{s}");

    let o = mzv(&["verify", "thm1", "--param", "m=1", "--param", "n=2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("zetastar(1,1,2) = 3*zeta(4)"));
}

#[test]
fn verify_out_of_domain_does_not_fail() {
    let o = mzv(&["verify", "s6_euler_weighted", "--param", "m=0"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("OUT_OF_DOMAIN"));
}

#[test]
fn verify_grid_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = mzv(&["verify", "sum_formula", "--grid", "k=2..6,r=1..5", "--report", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 25);
    assert!(results.iter().all(|r| r["status"] == "PASS" || r["status"] == "OUT_OF_DOMAIN"));
    assert!(v["run_id"].is_string());

    let csv = dir.path().join("r.csv");
    let o = mzv(&["verify", "stuffle", "--report", csv.to_str().unwrap(), "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 17);
}

#[test]
fn verify_errors() {
    assert_eq!(mzv(&["verify", "nonexistent"]).status.code(), Some(2));
    assert_eq!(mzv(&["verify", "thm2", "--param", "q=1"]).status.code(), Some(2));
}

#[test]
fn list_shows_anchors() {
    let o = mzv(&["list"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("sum_formula_chain"));
    assert!(s.contains("= ζ(k)"));
}

#[test]
fn suite_default_grids_pass() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let o = mzv(&["suite", "--report", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 fail"));
    mzv(&["suite", "--report", b.to_str().unwrap()]);
    // identical runs give identical reports
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
