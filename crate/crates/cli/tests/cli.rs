use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dpzoo(args: &[&str]) -> Output {
    dpzoo_with(None, args)
}

fn dpzoo_with(data: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dpzoo"));
    cmd.args(args).env_remove("DPZOO_DATA");
    if let Some(d) = data {
        cmd.env("DPZOO_DATA", d);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn copy_dir(from: &Path, to: &Path) {
    std::fs::create_dir_all(to).unwrap();
    for e in std::fs::read_dir(from).unwrap() {
        let e = e.unwrap();
        let target = to.join(e.file_name());
        if e.file_type().unwrap().is_dir() {
            copy_dir(&e.path(), &target);
        } else {
            std::fs::copy(e.path(), target).unwrap();
        }
    }
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dpzoo-cli-{name}-{}", std::process::id()));
    std::fs::remove_dir_all(&dir).ok();
    copy_dir(&data_dir(), &dir);
    dir
}

#[test]
fn verify_one_entry() {
    let o = dpzoo(&["table", "verify", "--entry", "d4-D5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS    type"));
}

#[test]
fn verify_whole_table() {
    let o = dpzoo(&["table", "verify", "-j", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("53/53 entries pass (3 through recorded errata)"));
}

#[test]
fn unknown_entry_is_a_usage_error() {
    let o = dpzoo(&["table", "verify", "--entry", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));
    assert_eq!(dpzoo(&["info", "bogus"]).status.code(), Some(2));
    assert_eq!(
        dpzoo(&["enumerate", "--degree", "10"]).status.code(),
        Some(2)
    );
    assert_eq!(dpzoo(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn degree_seven_graph_is_a_path() {
    let o = dpzoo(&["graph", "d7", "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert_eq!(dot.matches("shape=").count(), 3);
    assert_eq!(dot.matches(" -- ").count(), 2);
    let o = dpzoo(&["graph", "d7", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 3);
}

#[test]
fn degree_six_orbits() {
    let o = dpzoo(&["enumerate", "--degree", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().all(|l| l.contains(" d6-")));
}

#[test]
fn info_reports_torsion() {
    let o = dpzoo(&["info", "d3-3A2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["torsion"], serde_json::json!([3]));
    assert_eq!(v["type"], "3A2");
}

#[test]
fn corollaries_and_polynomials_pass() {
    let o = dpzoo(&["corollaries"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = dpzoo(&["poly-check", "d4-D5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let actions = v[0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "actions")
        .unwrap();
    assert_eq!(actions["status"], "pass");
}

#[test]
fn output_is_deterministic() {
    let a = dpzoo(&["table", "verify", "--json", "-j", "1"]);
    let b = dpzoo(&["table", "verify", "--json", "-j", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let a = dpzoo(&["corollaries", "--json"]);
    let b = dpzoo(&["corollaries", "--json", "-j", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tampered_row_fails_with_exit_one() {
    let dir = scratch("tampered");
    let path = dir.join("entries.json");
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let e = v["entries"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|e| e["id"] == "d5-A3")
        .unwrap();
    e["index"] = 5.into();
    std::fs::write(&path, v.to_string()).unwrap();
    let o = dpzoo_with(Some(&dir), &["table", "verify"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL    d5-A3"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn broken_data_is_exit_two() {
    let dir = scratch("broken");
    std::fs::write(dir.join("thm36.json"), "{\"rows\": [").unwrap();
    let o = dpzoo_with(Some(&dir), &["table", "verify"]);
    assert_eq!(o.status.code(), Some(2));
    let o = dpzoo_with(Some(&dir.join("missing")), &["table", "verify"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
