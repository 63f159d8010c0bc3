use std::io::Write;
use std::process::{Command, Output, Stdio};

fn su2n(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su2n"))
        .args(args)
        .env_remove("SU_SEED")
        .output()
        .expect("binary runs")
}

fn su2n_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_su2n"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_with(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn verify_default_passes() {
    let o = su2n(&["verify", "--n", "2", "--d", "5", "--ring", "Q", "--trials", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("SUITES 10/10 PASS\n"));
}

#[test]
fn verify_is_reproducible_and_honours_env_seed() {
    let a = su2n(&["verify", "--trials", "2", "--seed", "7"]);
    let b = su2n(&["verify", "--trials", "2", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_su2n"))
        .args(["verify", "--trials", "2"])
        .env("SU_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
    // the flag wins over the environment
    let both = Command::new(env!("CARGO_BIN_EXE_su2n"))
        .args(["verify", "--trials", "2", "--seed", "8"])
        .env("SU_SEED", "7")
        .output()
        .unwrap();
    assert!(stdout(&both).starts_with("n=2 ring=prod(1); d=5 seed=8 "));
}

#[test]
fn invalid_configs_are_rejected() {
    let o = su2n(&["verify", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = su2n(&["verify", "--d", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("square"));
}

#[test]
fn dump_generator_long_root() {
    let o = su2n(&["dump-generator", "--root", "+2e1", "--coord", "1", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "1;0 1;0 0;0 0;0\n0;0 1;0 0;0 0;0\n0;0 0;0 1;0 0;0\n0;0 0;0 0;0 1;0\n"
    );
}

#[test]
fn dump_constants_is_stable() {
    let a = su2n(&["dump-constants", "--n", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, su2n(&["dump-constants", "--n", "3"]).stdout);
    assert!(stdout(&a).contains("+e1-e2 +e2-e3  N11[+e1-e3] = u*v"));
}

#[test]
fn eval_word_on_empty_input_is_identity() {
    let o = su2n_stdin(&["eval-word"], "");
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "1;0 0;0 0;0 0;0\n0;0 1;0 0;0 0;0\n0;0 0;0 1;0 0;0\n0;0 0;0 0;0 1;0\n"
    );
}

#[test]
fn decompose_round_trips_through_eval_word() {
    let ring = "Q[t]/(t^2)";
    let word = "X[+e1-e2](1+t;2) X[-2e1](3/2) X[+e1+e2](-1;1/2)^-1 X[-e1+e2](t;0)";
    let matrix = su2n_stdin(&["eval-word", "--ring", ring], word);
    assert!(matrix.status.success(), "{}", String::from_utf8_lossy(&matrix.stderr));
    let mfile = temp_with(&stdout(&matrix));
    let decomposed = su2n(&["decompose", "--ring", ring, "--matrix-file", mfile.path().to_str().unwrap()]);
    assert!(decomposed.status.success(), "{}", String::from_utf8_lossy(&decomposed.stderr));
    let wfile = temp_with(&stdout(&decomposed));
    let again = su2n(&["eval-word", "--ring", ring, "--word-file", wfile.path().to_str().unwrap()]);
    assert_eq!(again.stdout, matrix.stdout);
}

#[test]
fn decompose_rejects_non_members_and_bad_text() {
    let m = temp_with("2;0 0;0 0;0 0;0\n0;0 1;0 0;0 0;0\n0;0 0;0 1;0 0;0\n0;0 0;0 0;0 1;0\n");
    let o = su2n(&["decompose", "--matrix-file", m.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("X*HX != H"));

    let bad = temp_with("1;0 0;0 0;0 0;0\n0;0 1;x 0;0 0;0\n");
    let o = su2n(&["decompose", "--matrix-file", bad.path().to_str().unwrap()]);
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("line 2"), "{err}");
}
