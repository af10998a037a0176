use std::process::{Command, Output};

fn idemlift(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_idemlift"));
    cmd.args(args);
    if let Some(n) = threads {
        cmd.env("RAYON_NUM_THREADS", n);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn subcommands_exit_cleanly() {
    for args in [
        &["list", "Z(200){C3}"][..],
        &["count", "Z(936){C5xC5}"],
        &["primitive", "Z(8)[x]/(x^2+x+1){C3}"],
        &["lift", "Z(25)[i]", "3+i"],
        &["verify", "Z(50){C3}", "--seed", "3", "--cases", "20"],
        &["oracle", "Z(25)[i]"],
    ] {
        let out = idemlift(args, None);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn exit_codes_reach_the_shell() {
    let code = |args: &[&str]| idemlift(args, None).status.code();
    assert_eq!(code(&["list", "Z(200)){C3}"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["oracle", "Z(7){C8}"]), Some(3));
    assert_eq!(code(&["lift", "Z(8){C3}", "g"]), Some(4));
    assert_eq!(code(&["lift", "Z(8){C3}", "g+g^2", "--chain", "2"]), Some(5));
}

#[test]
fn errors_go_to_stderr() {
    let out = idemlift(&["list", "Z(0)"], None);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error at 2"));
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        &["--json", "list", "Z(200){C3}"][..],
        &["--json", "oracle", "Z(8){C3}"],
        &["--json", "primitive", "Z(936){C5xC5}"],
    ] {
        let one = stdout(&idemlift(args, Some("1")));
        let many = stdout(&idemlift(args, Some("8")));
        assert!(!one.is_empty());
        assert_eq!(one, many, "{args:?}");
    }
}

#[test]
fn cap_flag_bounds_the_oracle() {
    let out = idemlift(&["--cap", "100", "oracle", "Z(5){C3}"], None);
    assert_eq!(out.status.code(), Some(3));
    let out = idemlift(&["--cap", "200", "oracle", "Z(5){C3}"], None);
    assert!(out.status.success());
}
