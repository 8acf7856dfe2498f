use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn iqm() -> Command {
    Command::new(env!("CARGO_BIN_EXE_iqm"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    iqm().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn bell_default_succeeds_with_entangled_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bell.csv");
    let o = run(&["bell", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.contains("# verdict verdict entangled"));
    assert!(String::from_utf8_lossy(&o.stdout).contains("verdict=entangled"));
}

#[test]
fn schema_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "bad.json",
        r#"{"scenario":"bell","eps":0.01,"colour":"red"}"#,
    );
    let o = run(&["bell", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
    let cfg = write(
        dir.path(),
        "eta.json",
        r#"{"scenario":"bell","eps":0.01,"eta":1.5}"#,
    );
    assert_eq!(code(&run(&["bell", "--config", cfg.to_str().unwrap()])), 2);
    let cfg = write(
        dir.path(),
        "cat.json",
        r#"{"scenario":"cat","alpha":[1,0],"beta":[0,0]}"#,
    );
    assert_eq!(code(&run(&["bell", "--config", cfg.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["bell", "--eta", "2"])), 2);
    assert_eq!(code(&run(&["teleport"])), 2);
    assert_eq!(code(&run(&["pipeline"])), 2);
}

#[test]
fn physicality_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.json",
        r#"{"scenario":"pipeline","state":[[[1.2,0],[0,0]],[[0,0],[-0.2,0]]],"eps":0.05}"#,
    );
    assert_eq!(
        code(&run(&["pipeline", "--config", cfg.to_str().unwrap()])),
        3
    );
    let cfg = write(
        dir.path(),
        "p.json",
        r#"{"scenario":"pipeline","state":"zero","eps":0.3,"projection":"none"}"#,
    );
    assert_eq!(
        code(&run(&["pipeline", "--config", cfg.to_str().unwrap()])),
        3
    );
}

#[test]
fn counterexample_exit_depends_on_expect_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "x.json",
        r#"{"scenario":"counterexample","which":2,"eta":0.999}"#,
    );
    let o = run(&["counterexample", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    let cfg = write(
        dir.path(),
        "y.json",
        r#"{"scenario":"counterexample","which":2,"eta":0.999,"expect_failure":true}"#,
    );
    let out = dir.path().join("x.csv");
    let o = run(&[
        "counterexample",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(std::fs::read_to_string(&out)
        .unwrap()
        .contains("# verdict outcome intersected as expected"));
}

#[test]
fn dead_cat_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"scenario":"cat","alpha":[0,0],"beta":[1,0],"eta":0.9}"#,
    );
    let o = run(&["cat", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("dead-certain"));
}

#[test]
fn help_exits_0() {
    let o = run(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("pipeline"));
}
