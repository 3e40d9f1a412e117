//! End-to-end tests of the `rfg` binary: output formats, exit codes,
//! determinism of primary output.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn rfg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rfg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("rfg-cli-test-{}-{name}", std::process::id()));
    p
}

const Z2: &str = r#"{"vertices":["a","b"],"edges":[["a","b"]]}"#;
const Z: &str = r#"{"vertices":["a"],"edges":[]}"#;

#[test]
fn witness_emits_certificate_json() {
    let out = rfg(&["witness", "--graph-inline", Z2, "--word", "a b"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["kind"], "separation-certificate");
    assert_eq!(value["degree"], 2);
    assert_eq!(value["cover"]["perms"]["a"], serde_json::json!([1, 0]));
}

#[test]
fn witness_identity_word_exits_2() {
    let out = rfg(&["witness", "--graph-inline", Z2, "--word", "a b a^-1 b^-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witness_malformed_graph_exits_1_with_self_loop() {
    let out = rfg(&[
        "witness",
        "--graph-inline",
        r#"{"vertices":["a"],"edges":[["a","a"]]}"#,
        "--word",
        "a",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("SelfLoop"));
}

#[test]
fn witness_requires_exactly_one_graph_source() {
    let out = rfg(&["witness", "--word", "a"]);
    assert_ne!(out.status.code(), Some(0));
    let path = tmp_path("dual-source.json");
    fs::write(&path, Z2).unwrap();
    let out = rfg(&[
        "witness",
        "--graph",
        path.to_str().unwrap(),
        "--graph-inline",
        Z2,
        "--word",
        "a",
    ]);
    assert_ne!(out.status.code(), Some(0));
    fs::remove_file(&path).ok();
}

#[test]
fn verify_round_trip_and_corruption() {
    let out = rfg(&["witness", "--graph-inline", Z2, "--word", "a^2 b"]);
    assert_eq!(out.status.code(), Some(0));
    let cert_path = tmp_path("cert.json");
    fs::write(&cert_path, stdout(&out)).unwrap();

    let ok = rfg(&["verify", cert_path.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert!(stdout(&ok).contains("ok separation-certificate"));

    // corrupt one permutation entry
    let mut value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&cert_path).unwrap()).unwrap();
    let perm = value["cover"]["perms"]["a"].as_array().unwrap().clone();
    let degree = perm.len() as u64;
    let bumped = (perm[0].as_u64().unwrap() + 1) % degree;
    value["cover"]["perms"]["a"][0] = serde_json::json!(bumped);
    let bad_path = tmp_path("cert-bad.json");
    fs::write(&bad_path, value.to_string()).unwrap();
    let bad = rfg(&["verify", bad_path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    let msg = stderr(&bad);
    assert!(
        msg.contains("NotAPermutation")
            || msg.contains("CommutationFailure")
            || msg.contains("Separates")
            || msg.contains("CoverExtendsPartial"),
        "corruption must be named: {msg}"
    );

    // truncated file
    let trunc_path = tmp_path("cert-trunc.json");
    let full = fs::read_to_string(&cert_path).unwrap();
    fs::write(&trunc_path, &full[..full.len() / 2]).unwrap();
    let trunc = rfg(&["verify", trunc_path.to_str().unwrap()]);
    assert_eq!(trunc.status.code(), Some(1));
    assert!(stderr(&trunc).contains("ParseError"));

    for p in [cert_path, bad_path, trunc_path] {
        fs::remove_file(p).ok();
    }
}

#[test]
fn verify_accepts_congruence_witness_files() {
    let witness = rfg_core::congruence_witness(&rfg_core::g_n(3, 6).unwrap()).unwrap();
    let path = tmp_path("congruence.json");
    fs::write(&path, witness.to_json()).unwrap();
    let ok = rfg(&["verify", path.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert!(stdout(&ok).contains("ok congruence-witness"));

    let mut value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    value["p"] = serde_json::json!(6); // not prime
    let bad_path = tmp_path("congruence-bad.json");
    fs::write(&bad_path, value.to_string()).unwrap();
    let bad = rfg(&["verify", bad_path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("Prime"));

    fs::remove_file(path).ok();
    fs::remove_file(bad_path).ok();
}

#[test]
fn divide_reports_exact_value() {
    let out = rfg(&["divide", "--graph-inline", Z, "--word", "a^6", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# rfg-v1"));
    assert_eq!(lines.next(), Some("value,mode,witness_degree"));
    assert_eq!(lines.next(), Some("4,subgroup,4"));
}

#[test]
fn growth_csv_matches_schema() {
    let out = rfg(&["growth", "--graph-inline", Z, "--n-max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# rfg-v1");
    assert_eq!(lines[1], "n,F_n,extremal_word,witness_index,mode,seconds");
    assert!(lines[7].starts_with("6,4,a^6,4,subgroup,"));
}

#[test]
fn slk_csv_contains_pinned_rows() {
    let out = rfg(&["slk", "--k", "3", "--n-max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("4,12,25,31,5,")));
    assert!(text.lines().any(|l| l.starts_with("6,60,49,57,7,")));
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = rfg(&[
        "divide", "--graph-inline", Z, "--word", "a", "--mode", "normal", "--budget", "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn selftest_passes() {
    let out = rfg(&["selftest", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("ok ")).count(), 6);
}

#[test]
fn identical_config_gives_identical_output() {
    for args in [
        vec!["witness", "--graph-inline", Z2, "--word", "a b^-1 a"],
        vec!["divide", "--graph-inline", Z2, "--word", "a b", "--format", "json"],
        vec!["slk", "--k", "3", "--n-max", "8"],
        vec!["selftest", "--seed", "42"],
    ] {
        let a = rfg(&args);
        let b = rfg(&args);
        assert_eq!(stdout(&a), stdout(&b), "args: {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
    // growth carries wall-clock seconds in the last column; everything else
    // must be byte-identical
    let strip = |s: String| -> Vec<String> {
        s.lines()
            .map(|l| l.rsplit_once(',').map(|(head, _)| head.to_owned()).unwrap_or(l.to_owned()))
            .collect()
    };
    let a = rfg(&["growth", "--graph-inline", Z, "--n-max", "5"]);
    let b = rfg(&["growth", "--graph-inline", Z, "--n-max", "5"]);
    assert_eq!(strip(stdout(&a)), strip(stdout(&b)));
}
