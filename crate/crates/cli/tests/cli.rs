use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn germlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_germlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn bundled_corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/germs.jsonl")
}

fn corpus_file(lines: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(lines.as_bytes()).unwrap();
    f
}

#[test]
fn fermat_cubic_json() {
    let o = germlab(&[
        "invariants",
        "--vars",
        "x,y,z",
        "--poly",
        "x^3+y^3+z^3",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mu"], 8);
    assert_eq!(v["tau"], 8);
    assert_eq!(v["ratio"], "1/1");
    assert_eq!(v["status"], "OK");
}

#[test]
fn cusp_table() {
    let o = germlab(&["invariants", "--vars", "x,y", "--poly", "x^2+y^3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.lines()
            .any(|l| l.starts_with("mu ") && l.ends_with(" 2")),
        "{out}"
    );
    assert!(
        out.lines()
            .any(|l| l.starts_with("tau ") && l.ends_with(" 2")),
        "{out}"
    );
}

#[test]
fn non_isolated_exits_2() {
    let o = germlab(&["invariants", "--vars", "x,y", "--poly", "x^2", "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "NOT_ISOLATED");
}

#[test]
fn input_errors_exit_2() {
    let o = germlab(&["invariants", "--vars", "x,y", "--poly", "2x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 2"), "{}", stderr(&o));
    let o = germlab(&["invariants", "--vars", "x,y", "--poly", "x^2+q^3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`q`"));
    let o = germlab(&[
        "invariants",
        "--vars",
        "x",
        "--poly",
        "x^2",
        "--checks",
        "bogus",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = germlab(&["verify", "--corpus", "/nonexistent/germs.jsonl"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_is_byte_identical() {
    let args = [
        "invariants",
        "--vars",
        "x,y,z",
        "--poly",
        "x^2*y^2+x^5+y^5+z^4",
        "--json",
        "--seed",
        "7",
    ];
    assert_eq!(germlab(&args).stdout, germlab(&args).stdout);
}

#[test]
fn newton_numbers() {
    let o = germlab(&["newton", "--vars", "x,y", "--poly", "x^3+y^2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nu"], 2);
    assert_eq!(v["mu_eq_nu"], true);

    let o = germlab(&[
        "newton",
        "--vars",
        "x,y,z",
        "--poly",
        "x^2+y^3+z^7",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nu"], 12);
    assert_eq!(v["mu"], 12);
}

#[test]
fn non_convenient_names_the_axis() {
    let o = germlab(&["newton", "--vars", "x,y", "--poly", "x^2*y+y^2*x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("no pure power of `x`"),
        "{}",
        stderr(&o)
    );
    let o = germlab(&["newton", "--vars", "x,y", "--poly", "x^3+x*y^3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`y`"), "{}", stderr(&o));
}

#[test]
fn sectional_profile() {
    let o = germlab(&[
        "sectional",
        "--vars",
        "x,y,z",
        "--poly",
        "x^3+y^3+z^3",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mu_i"], serde_json::json!([1, 2, 4, 8]));
    assert_eq!(v["log_convex"], true);
}

#[test]
fn oracle_command() {
    let o = germlab(&[
        "oracle",
        "--vars",
        "x,y",
        "--poly",
        "(x*y)^2+x^6+y^6",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mu"], 13);
    assert_eq!(v["tau"], 12);
}

#[test]
fn bundled_corpus_passes() {
    let path = bundled_corpus();
    let o = germlab(&["verify", "--corpus", path.to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(!out.contains("FAIL"), "{out}");
    assert!(out.contains("0 failed"));
}

#[test]
fn verify_keeps_file_order() {
    let f = corpus_file(
        "{\"name\":\"first\",\"vars\":[\"x\",\"y\"],\"poly\":\"(x*y)^2+x^6+y^6\"}\n\
         {\"name\":\"second\",\"vars\":[\"x\"],\"poly\":\"x^2\"}\n\
         {\"name\":\"third\",\"vars\":[\"x\",\"y\"],\"poly\":\"x^3+y^2\"}\n",
    );
    let o = germlab(&[
        "verify",
        "--corpus",
        f.path().to_str().unwrap(),
        "--jobs",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = stdout(&o)
        .lines()
        .filter_map(|l| l.strip_prefix("PASS "))
        .map(|l| l.split_whitespace().next().unwrap().to_string())
        .collect();
    assert_eq!(names, ["first", "second", "third"]);
}

#[test]
fn wrong_expected_value_fails_by_name() {
    let f = corpus_file(
        "{\"name\":\"A2\",\"vars\":[\"x\",\"y\"],\"poly\":\"x^3+y^2\",\"expected\":{\"mu\":2}}\n\
         {\"name\":\"bad_E6\",\"vars\":[\"x\",\"y\"],\"poly\":\"x^3+y^4\",\"expected\":{\"mu\":7}}\n",
    );
    let o = germlab(&["verify", "--corpus", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL bad_E6: expected mu = 7, got 6"), "{out}");
    assert!(out.contains("PASS A2"));
}

#[test]
fn empty_corpus() {
    let f = corpus_file("# nothing here\n");
    let o = germlab(&["verify", "--corpus", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 germs"));
}

#[test]
fn malformed_corpus_line() {
    let f = corpus_file(
        "{\"name\":\"ok\",\"vars\":[\"x\"],\"poly\":\"x^2\"}\n{\"name\":\"x\",\"vars\":[\"x\"],\"poly\":\"x^2\",\"extra\":true}\n",
    );
    let o = germlab(&["verify", "--corpus", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 2") && err.contains("extra"), "{err}");
}

#[test]
fn zero_jobs_rejected() {
    let path = bundled_corpus();
    let o = germlab(&["verify", "--corpus", path.to_str().unwrap(), "--jobs", "0"]);
    assert_eq!(o.status.code(), Some(2));
}
