use std::io::Write;
use std::process::{Command, Output, Stdio};

use cascade_cli::{parse_decision, parse_instance, ParsedInstance};

fn cascade(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cascade"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

#[test]
fn decide_reads_stdin() {
    let out = cascade(
        &["decide", "-"],
        Some(r#"{"graph":"path","weights":[1,1],"lists":[[1,2],[2,3]]}"#),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), r#"{"colorable":true,"coloring":[[1],[2]]}"#);
}

#[test]
fn decide_reports_certificate() {
    let out = cascade(
        &["decide", "-"],
        Some(r#"{"graph":"path","weights":[1,1],"lists":[[1],[1]]}"#),
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        stdout(&out),
        r#"{"colorable":false,"certificate":{"i":0,"j":1,"amplitude":1,"demand":2}}"#
    );
}

#[test]
fn forced_cycle_coloring_keeps_forced_set() {
    let text = r#"{"graph":"cycle","weights":[2,2,2,2],"lists":[[1,2,3,4,5],[1,2,3,4,5],[1,2,3,4,5],[1,2,3,4,5]],"forced":{"vertex":2,"colors":[4,5]}}"#;
    let out = cascade(&["decide", "-"], Some(text));
    assert_eq!(out.status.code(), Some(0));
    let d = parse_decision(&stdout(&out)).unwrap();
    let (parsed, _) = parse_instance(text).unwrap();
    let ParsedInstance::Forced(fi) = parsed else {
        panic!("expected forced instance")
    };
    let c = d.coloring().unwrap();
    assert_eq!(&c[2], fi.forced());
    assert!(cascade::validate_coloring(fi.cycle(), c).unwrap());
}

#[test]
fn counterexample_round_trips_through_decide() {
    let ce = cascade(
        &["counterexample", "--a", "4", "--b", "2", "--n", "4"],
        None,
    );
    assert_eq!(
        stdout(&ce),
        r#"{"graph":"cycle","weights":[2,2,2,2],"lists":[[1,2,3,4],[1,2,3,4],[3,4,5,6],[1,2,5,6]],"forced":{"vertex":0,"colors":[1,2]}}"#
    );
    let out = cascade(&["decide", "-"], Some(&stdout(&ce)));
    assert_eq!(out.status.code(), Some(1));
    let out = cascade(&["oracle", "-"], Some(&stdout(&ce)));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_checks_colorings() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    std::fs::write(
        &inst,
        r#"{"graph":"cycle","weights":[1,1,1],"lists":[[1,2,3],[1,2,3],[1,2,3]]}"#,
    )
    .unwrap();
    let inst = inst.to_str().unwrap();

    let out = cascade(&["verify", inst, "-"], Some("[[1],[2],[3]]"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), r#"{"valid":true}"#);

    let out = cascade(
        &["verify", inst, "-"],
        Some(r#"{"colorable":true,"coloring":[[1],[2],[1]]}"#),
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), r#"{"valid":false}"#);

    let out = cascade(&["verify", inst, "-"], Some("[[1],[2]]"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn duplicate_colors_warn_unless_quiet() {
    let text = r#"{"graph":"path","weights":[1],"lists":[[3,3]]}"#;
    let loud = cascade(&["decide", "-"], Some(text));
    assert!(String::from_utf8_lossy(&loud.stderr).contains("duplicate color 3"));
    let quiet = cascade(&["--quiet", "decide", "-"], Some(text));
    assert!(quiet.stderr.is_empty());
    assert_eq!(loud.stdout, quiet.stdout);
}

#[test]
fn budget_limits_the_oracle() {
    let text = r#"{"graph":"path","weights":[1,1,1,1,1,1,1,1,1,1,1,1],"lists":[[1,2,3],[1,2,3],[1,2,3],[1,2,3],[1,2,3],[1,2,3],[1,2,3],[1,2,3],[1,2,3],[1,2,3],[1,2,3],[]]}"#;
    let out = cascade(&["oracle", "--budget", "50", "-"], Some(text));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    let out = cascade(&["oracle", "-"], Some(text));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn waterfall_rejects_bad_lists_and_cycles() {
    let out = cascade(
        &["waterfall", "-"],
        Some(r#"{"graph":"path","weights":[1,1,1],"lists":[[1,2,3],[1],[1,2,3]]}"#),
    );
    assert_eq!(out.status.code(), Some(2));
    let out = cascade(
        &["waterfall", "-"],
        Some(r#"{"graph":"cycle","weights":[1,1,1],"lists":[[1],[2],[3]]}"#),
    );
    assert_eq!(out.status.code(), Some(2));
    let out = cascade(
        &["waterfall", "-"],
        Some(r#"{"graph":"path","weights":[1,1,1],"lists":[[1,2],[1,2],[2,3]]}"#),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        r#"{"lists":[[1,2],[1,2],[3,4]],"report":{"iterations":1,"fresh_colors":[4],"replacements":[{"kind":"span_tail","original":2,"fresh":4,"first":2,"last":2}]}}"#
    );
}

#[test]
fn ratio_commands() {
    let out = cascade(&["fchr", "--n", "10"], None);
    assert_eq!(stdout(&out), r#"{"den":5,"fchr":"11/5","n":10,"num":11}"#);
    assert_eq!(cascade(&["fchr", "--n", "2"], None).status.code(), Some(2));
    let out = cascade(
        &["free-choosable", "--a", "9", "--b", "4", "--n", "8"],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), r#"{"a":9,"b":4,"free_choosable":true,"n":8}"#);
}
