use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn coverlab(args: &[&str]) -> Output {
    coverlab_env(args, None)
}

fn coverlab_env(args: &[&str], budget_env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coverlab"));
    cmd.args(args).env_remove("COVERLAB_BUDGET");
    if let Some(b) = budget_env {
        cmd.env("COVERLAB_BUDGET", b);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("structured output is JSON")
}

fn verdict<'a>(v: &'a Value, check: &str) -> &'a Value {
    v["verdicts"].as_array().unwrap().iter().find(|x| x["check"] == check).unwrap_or_else(|| panic!("no {check}"))
}

#[test]
fn verify_cover_statuses() {
    let d = TempDir::new().unwrap();
    let exact = write(&d, "exact.txt", "0/2\n1/4\n3/4\n");
    let o = coverlab(&["verify-cover", s(&exact)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[info yes] exact-cover: true"));

    let trivial = write(&d, "trivial.txt", "0/1\n");
    let o = coverlab(&["--format", "structured", "verify-cover", s(&trivial)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(verdict(&json(&o), "trivial")["holds"], true);

    let gap = write(&d, "gap.txt", "0/2\n1/4\n");
    assert_eq!(coverlab(&["verify-cover", s(&gap)]).status.code(), Some(1));

    let bad = write(&d, "bad.txt", "# header\n2/2\n");
    let o = coverlab(&["verify-cover", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2, column 1") && err.contains("out of range"), "{err}");
}

#[test]
fn bounds_report_c() {
    let o = coverlab(&["--format", "structured", "bounds", "--M", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["command"], "bounds");
    assert_eq!(verdict(&v, "c")["value"], 9);
    assert!(v["version"].as_str().unwrap().starts_with("coverlab "));
}

#[test]
fn rationals_are_string_pairs() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "c.txt", "0/2\n0/3\n");
    let v = json(&coverlab(&["--format", "structured", "density", s(&f)]));
    assert_eq!(verdict(&v, "density")["value"], serde_json::json!({"num": "2", "den": "3"}));
}

#[test]
fn hs_search_finds_nothing() {
    let o = coverlab(&["hs-search"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("no counterexample"));
    assert_eq!(out.matches("no-distinct-index-partition").count(), 24);
}

#[test]
fn structured_output_is_deterministic() {
    let args = ["--format", "structured", "--seed", "17", "rogers", "--random", "50"];
    let a = coverlab(&args);
    let b = coverlab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 17);
    let other = coverlab(&["--format", "structured", "--seed", "18", "lemma34", "--random", "50"]);
    assert_eq!(other.status.code(), Some(0));
}

#[test]
fn budgets_truncate_with_status_two() {
    let o = coverlab(&["--budget", "10", "enumerate-covers", "--group", "D8", "--k", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("truncated"));
    let o = coverlab_env(&["enumerate-covers", "--group", "D8", "--k", "4"], Some("10"));
    assert_eq!(o.status.code(), Some(2));

    let d = TempDir::new().unwrap();
    let f = write(&d, "c.txt", "0/2\n1/2\n0/101\n");
    let o = coverlab(&["--budget", "100", "verify-cover", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("budget"));

    // flags cannot raise the built-in cap
    let o = coverlab(&["--budget", "999999999999", "verify-cover", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lowered to the built-in cap"));
}

#[test]
fn enumerate_covers_small_groups() {
    let o = coverlab(&["--format", "structured", "enumerate-covers", "--group", "C4", "--k", "4", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let c4 = verdict(&v, "C4/uniform-cover-checks");
    assert_eq!(c4["value"]["covers"], 4);
    assert_eq!(c4["witness"].as_array().unwrap().len(), 4);
}

#[test]
fn uniform_cover_commands() {
    let d = TempDir::new().unwrap();
    let z4 = write(&d, "z4.txt", "group C4\n0 : 2\n1 :\n3 :\n");
    assert_eq!(coverlab(&["thm41", s(&z4)]).status.code(), Some(0));
    assert_eq!(coverlab(&["thm32", s(&z4), "--h", "2"]).status.code(), Some(0));
    let o = coverlab(&["--format", "structured", "thm31", s(&z4)]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(verdict(&v, "coset-count-bound")["asserted"], true);
    let o = coverlab(&["--format", "structured", "conjecture41", s(&z4)]);
    let v = json(&o);
    assert_eq!(verdict(&v, "largest-index-multiplicity")["value"]["n_max"], 4);

    let partial = write(&d, "p.txt", "group C4\n0 : 2\n");
    assert_eq!(coverlab(&["thm41", s(&partial)]).status.code(), Some(2));
}

#[test]
fn zcover_commands() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "c.txt", "0/2\n1/4\n3/8\n7/8\n");
    assert_eq!(coverlab(&["simpson", s(&f)]).status.code(), Some(0));
    assert_eq!(coverlab(&["thm42", s(&f)]).status.code(), Some(0));
    assert_eq!(coverlab(&["thm42", s(&f), "--prime", "2"]).status.code(), Some(0));
    assert_eq!(coverlab(&["thm42", s(&f), "--prime", "3"]).status.code(), Some(2));
    assert_eq!(coverlab(&["rogers", s(&f)]).status.code(), Some(0));
    assert_eq!(coverlab(&["lemma34", s(&f)]).status.code(), Some(0));
    assert_eq!(coverlab(&["mu", "4,6", "--scale", "3"]).status.code(), Some(0));
    let o = coverlab(&["--format", "structured", "mu", "4,6"]);
    // D({4,6}) = {1,2,3,4,6}
    assert_eq!(verdict(&json(&o), "mu")["value"], 1 + 1 + 2 + 2 + 2);
    assert_eq!(coverlab(&["qbound", "--q", "5", "--M", "2"]).status.code(), Some(0));
}

#[test]
fn group_files() {
    let d = TempDir::new().unwrap();
    let s3 = write(&d, "s3.toml", "name = \"S3\"\ndegree = 3\ngenerators = [\"(1,2,3)\", \"(1,2)\"]\nexpected_order = 6\n");
    let o = coverlab(&["--format", "structured", "group-info", "--group-file", s(&s3), "--subgroups"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let info = &verdict(&v, "S3")["value"];
    assert_eq!(info["order"], 6);
    assert_eq!(info["subgroup_list"].as_array().unwrap().len(), 6);
    assert_eq!(info["elements"].as_array().unwrap().len(), 6);

    let bad = write(&d, "bad.toml", "name = \"X\"\ndegree = 2\ngenerators = [\"(1,2)\"]\nexpected_order = 5\n");
    assert_eq!(coverlab(&["group-info", "--group-file", s(&bad)]).status.code(), Some(2));
    assert_eq!(coverlab(&["lemma-suite", "--max-order", "8"]).status.code(), Some(0));
}

#[test]
fn usage_errors() {
    assert_eq!(coverlab(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(coverlab(&["bounds", "--M", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(coverlab(&["bounds", "--M", "1"]).status.code(), Some(2));
    assert_eq!(coverlab(&["group-info", "--group", "Nope"]).status.code(), Some(2));
}

#[test]
fn thm31_sweep_passes() {
    let o = coverlab(&["thm31", "--sweep", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
