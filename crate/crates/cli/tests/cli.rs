use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qvir"));
    cmd.args(args).env_remove("QVIR_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.arg("--cache-dir").arg(dir);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn malformed_arguments_exit_two() {
    for args in [
        &["compute", "P", "--partition", "2,x"][..],
        &["compute", "P"],
        &["compute", "vG"],
        &["compute", "nope", "--n", "2"],
        &["verify", "--suite", "nope"],
        &["verify", "--nmax", "-1"],
    ] {
        let o = run(args, None);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn compute_prints_one_json_line() {
    for args in [
        &["compute", "P", "--partition", "2,1"][..],
        &["compute", "H", "--partition", "2"],
        &["compute", "gamma", "--partition", "3"],
        &["compute", "vG", "--n", "2"],
        &["compute", "v0", "--n", "2"],
        &["compute", "vinf", "--n", "2"],
        &["compute", "theta", "--n", "2"],
        &["compute", "tau", "--partition", "2,1"],
    ] {
        let o = run(args, None);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        assert_eq!(text.lines().count(), 1);
        serde_json::from_str::<serde_json::Value>(&text).unwrap();
    }
}

#[test]
fn verify_single_suite_in_markdown() {
    let o = run(&["verify", "--suite", "whittaker", "--nmax", "3", "--format", "markdown"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("| T1_vG |"));
    assert!(text.trim_end().ends_with("all passed"));
}

#[test]
fn verify_json_echoes_config() {
    let o = run(&["verify", "fock", "--nmax", "2", "--jobs", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["config"]["suite"], "fock");
    assert_eq!(v["config"]["nmax"], 2);
    assert!(!v["entries"].as_array().unwrap().is_empty());
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let d = Some(dir.path());
    assert_eq!(run(&["cache", "get", "--kind", "P", "--partition", "3"], d).status.code(), Some(1));

    let computed = stdout(&run(&["compute", "P", "--partition", "3"], None));
    let file = dir.path().join("input.json");
    std::fs::write(&file, &computed).unwrap();
    let put = run(&["cache", "put", "--kind", "P", "--partition", "3", "--file", file.to_str().unwrap()], d);
    assert_eq!(put.status.code(), Some(0));
    assert_eq!(stdout(&run(&["cache", "get", "--kind", "P", "--partition", "3"], d)), computed);

    // A damaged record is reported and then recomputed.
    let record = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.file_name().unwrap().to_string_lossy().starts_with("v1-P-3"))
        .unwrap();
    std::fs::write(&record, "{\"schema\":1,").unwrap();
    let o = run(&["compute", "P", "--partition", "3"], d);
    assert_eq!(stdout(&o), computed);
    assert!(String::from_utf8_lossy(&o.stderr).contains("corrupt"));

    assert_eq!(run(&["cache", "put", "--kind", "Z", "--partition", "3"], d).status.code(), Some(2));
    assert_eq!(run(&["cache", "clear"], d).status.code(), Some(0));
    assert_eq!(run(&["cache", "get", "--kind", "P", "--partition", "3"], d).status.code(), Some(1));
    assert_eq!(run(&["cache", "clear"], None).status.code(), Some(2));
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_qvir"))
        .args(["compute", "J", "--partition", "2,1"])
        .env("QVIR_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
}
