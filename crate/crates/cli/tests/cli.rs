use std::path::Path;
use std::process::{Command, Output};

use e2_core::resolution::ExtChart;

fn e2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_e2"))
        .args(args)
        .output()
        .unwrap()
}

fn e2_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_e2"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn adem_examples() {
    for (input, expected) in [
        ("Sq1 Sq1", "0\n"),
        ("Sq2 Sq2", "Sq3 Sq1\n"),
        ("Sq4", "Sq4\n"),
        ("Sq2 Sq3", "Sq5 + Sq4 Sq1\n"),
    ] {
        let o = e2(&["adem", input]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o), expected, "{input}");
    }
    // separate arguments are joined
    assert_eq!(stdout(&e2(&["adem", "Sq2", "Sq2"])), "Sq3 Sq1\n");
}

#[test]
fn adem_parse_error_exits_2() {
    let o = e2(&["adem", "Sq2 Xq1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Xq1"));
}

#[test]
fn basis_examples() {
    assert_eq!(stdout(&e2(&["basis", "--degree", "0"])), "1\ncount 1\n");
    assert_eq!(
        stdout(&e2(&["basis", "--degree", "3"])),
        "Sq3, Sq2 Sq1\ncount 2\n"
    );
    let o = e2(&["basis", "--degree", "10", "--oracle"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("milnor 6\nAGREE\n"));
    assert_eq!(code(&e2(&["basis", "--degree", "-1"])), 2);
}

#[test]
fn gstar_verify_passes() {
    for p in ["2", "3"] {
        let o = e2(&["gstar-verify", "--prime", p, "--max-n", "12"]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let out = stdout(&o);
        // header, column names, 13 rows, Σ line, verdict
        assert_eq!(out.lines().count(), 17);
        assert!(out.ends_with("all checks pass\n"));
    }
    assert_eq!(code(&e2(&["gstar-verify", "--max-n", "65"])), 2);
    assert_eq!(code(&e2(&["gstar-verify", "--prime", "4"])), 2);
}

#[test]
fn broken_presentation_fails_with_the_relation() {
    let dir = tempfile::tempdir().unwrap();
    let exported = stdout(&e2(&["export-gstar", "--prime", "2", "--max-dim", "8"]));
    let mut doc: serde_json::Value = serde_json::from_str(&exported).unwrap();
    let rules = doc["rules"].as_array_mut().unwrap();
    let before = rules.len();
    rules.retain(|r| !r["lhs"].as_array().unwrap().iter().any(|l| l == "[1]"));
    assert_eq!(rules.len(), before - 8);
    std::fs::write(dir.path().join("broken.json"), doc.to_string()).unwrap();
    std::fs::write(dir.path().join("intact.json"), &exported).unwrap();

    let o = e2_in(
        dir.path(),
        &[
            "gstar-verify",
            "--max-n",
            "6",
            "--presentation",
            "intact.json",
        ],
    );
    assert_eq!(code(&o), 0);

    let o = e2_in(
        dir.path(),
        &[
            "gstar-verify",
            "--max-n",
            "6",
            "--presentation",
            "broken.json",
        ],
    );
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("[1]·z = z·[1]"), "{err}");
}

#[test]
fn unreadable_presentation_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\"schema\": 1, \"extra\": 0}").unwrap();
    assert_eq!(
        code(&e2_in(
            dir.path(),
            &["gstar-verify", "--presentation", "bad.json"]
        )),
        2
    );
    assert_eq!(
        code(&e2_in(
            dir.path(),
            &["gstar-verify", "--presentation", "missing.json"]
        )),
        2
    );
}

fn chart_at(path: &Path) -> ExtChart {
    ExtChart::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn resolve_small_window() {
    let dir = tempfile::tempdir().unwrap();
    let o = e2_in(
        dir.path(),
        &[
            "resolve",
            "--max-s",
            "3",
            "--max-t",
            "8",
            "--out",
            "chart.json",
        ],
    );
    assert_eq!(code(&o), 0);
    let chart = chart_at(&dir.path().join("chart.json"));
    let ext1: Vec<u32> = chart
        .classes
        .iter()
        .filter(|c| c.s == 1)
        .map(|c| c.t)
        .collect();
    assert_eq!(ext1, vec![1, 2, 4, 8]);
}

#[test]
fn resolve_tower_and_renders() {
    let dir = tempfile::tempdir().unwrap();
    let o = e2_in(
        dir.path(),
        &[
            "resolve",
            "--max-s",
            "8",
            "--max-t",
            "9",
            "--out",
            "chart.json",
            "--render",
            "ascii",
        ],
    );
    assert_eq!(code(&o), 0);
    let chart = chart_at(&dir.path().join("chart.json"));
    for s in 0..=8 {
        assert_eq!(chart.dim(s, s), 1, "({s}, {s})");
    }
    // the tower is the first column of every row
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| l.contains(" |")).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows
        .iter()
        .all(|r| r.split('|').nth(1).unwrap().starts_with('.')));

    let o = e2_in(
        dir.path(),
        &[
            "resolve",
            "--max-s",
            "2",
            "--max-t",
            "4",
            "--out",
            "small.json",
            "--render",
            "svg",
        ],
    );
    assert_eq!(code(&o), 0);
    let svg = std::fs::read_to_string(dir.path().join("small.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(
        svg.matches("class=\"ext\"").count(),
        chart_at(&dir.path().join("small.json")).classes.len()
    );
}

#[test]
fn resolve_oracle_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let o = e2_in(
        dir.path(),
        &[
            "resolve",
            "--max-s",
            "5",
            "--max-t",
            "13",
            "--out",
            "chart.json",
            "--oracle",
        ],
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("AGREE\n"));
}

#[test]
fn resource_bound_exits_3_with_partial_chart() {
    let dir = tempfile::tempdir().unwrap();
    let o = e2_in(
        dir.path(),
        &[
            "resolve",
            "--max-s",
            "6",
            "--max-t",
            "20",
            "--out",
            "chart.json",
            "--max-basis",
            "8",
        ],
    );
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("frontier s = "));
    let chart = chart_at(&dir.path().join("chart.json"));
    assert_eq!(chart.dim(0, 0), 1);
}

#[test]
fn zero_threads_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = e2_in(
        dir.path(),
        &[
            "resolve",
            "--max-s",
            "1",
            "--max-t",
            "2",
            "--out",
            "c.json",
            "--threads",
            "0",
        ],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn bstar_basis_examples() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("empty.json"),
        r#"{"schema":1,"p":2,"e0":[],"e1":[],"e2":[]}"#,
    )
    .unwrap();
    let o = e2_in(
        dir.path(),
        &[
            "bstar-basis",
            "--degree",
            "0",
            "--dimension",
            "0",
            "--skeleton",
            "empty.json",
        ],
    );
    assert_eq!(stdout(&o), "1\ncount 1\n");
    let o = e2_in(
        dir.path(),
        &[
            "bstar-basis",
            "--degree",
            "1",
            "--dimension",
            "1",
            "--skeleton",
            "empty.json",
        ],
    );
    assert_eq!(stdout(&o), "[1]\ncount 1\n");

    std::fs::write(
        dir.path().join("bad.json"),
        r#"{"schema":1,"p":2,"e0":[{"label":"a","degree":-1}],"e1":[],"e2":[]}"#,
    )
    .unwrap();
    let o = e2_in(
        dir.path(),
        &[
            "bstar-basis",
            "--degree",
            "1",
            "--dimension",
            "0",
            "--skeleton",
            "bad.json",
        ],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn dump_and_relations() {
    let o = e2(&["dump", "--max-s", "2", "--max-t", "4"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["stages"].as_array().unwrap().len(), 3);

    let out = stdout(&e2(&["relations", "--max-degree", "4"]));
    assert!(out
        .lines()
        .any(|l| l.starts_with("r2,2") && l.ends_with("Sq2 Sq2 = Sq3 Sq1")));
}

#[test]
fn output_is_repeatable() {
    let a = e2(&["gstar-verify", "--prime", "3", "--max-n", "5"]);
    let b = e2(&["gstar-verify", "--prime", "3", "--max-n", "5"]);
    assert_eq!(a.stdout, b.stdout);
}
