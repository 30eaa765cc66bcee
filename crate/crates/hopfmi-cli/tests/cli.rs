//! End-to-end tests of the `hopfmi` binary: golden outputs, determinism,
//! exit codes, and the fiber-cache lifecycle.

use std::path::Path;
use std::process::{Command, Output};

fn hopfmi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfmi"))
        .args(args)
        .env_remove("HOPFMI_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn golden_lot_coproduct() {
    let out = hopfmi(&["coproduct", "--algebra", "lot", "x{-1}^2 x{0} x{1}"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for term in [
        "x{-1}^2 x{0} x{1} ⊗ 1",
        "1 ⊗ x{-1}^2 x{0} x{1}",
        "2 x{-1} ⊗ x{-1}^2 x{1}",
        "2 x{-1} ⊗ x{-1} x{0}^2",
        "2 x{-1} x{0} ⊗ x{-1} x{0}",
        "x{-1}^2 x{1} ⊗ x{-1}",
        "3 x{-1} (.) x{-1} ⊗ x{-1} x{0}",
        "2 x{-1} (.) x{-1} x{0} ⊗ x{-1}",
    ] {
        assert!(text.contains(term), "missing {term} in {text}");
    }
    assert_eq!(text.matches('⊗').count(), 8);
}

#[test]
fn golden_embedding() {
    let out = hopfmi(&["embed", "x{-1}^3 x{0} x{2}"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3 a[a,a,a[a]] + a[a[a,a,a]]");

    let out = hopfmi(&["embed", "x{-1} x{0}"]);
    assert_eq!(stdout(&out).trim(), "a[a]");
}

#[test]
fn output_is_deterministic() {
    let a = hopfmi(&["coproduct", "--algebra", "bck", "a[a,a] · a"]);
    let b = hopfmi(&["coproduct", "--algebra", "bck", "a[a,a] · a"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_all_degree_five_exits_zero() {
    let out = hopfmi(&["verify", "--identity", "all", "--degree", "5", "--alphabet", "a"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 10);
}

#[test]
fn verify_json_report() {
    let out = hopfmi(&[
        "--format",
        "json",
        "verify",
        "--identity",
        "phib",
        "--degree",
        "3",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["sort"], "verify");
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["reports"][0]["identity"], "phib");
}

#[test]
fn enumerate_tree_counts() {
    for (n, count) in [(1, 1), (2, 1), (3, 2), (4, 4), (5, 9)] {
        let out = hopfmi(&["enumerate", "--what", "trees", "--degree", &n.to_string()]);
        assert!(out.status.success());
        assert_eq!(stdout(&out).trim().lines().count(), count, "degree {n}");
    }
}

#[test]
fn bseries_golden_series() {
    let dir = tempfile::tempdir().unwrap();
    let alpha = dir.path().join("alpha.json");
    std::fs::write(&alpha, r#"{"default": "1"}"#).unwrap();
    let out = hopfmi(&[
        "bseries",
        "--alpha",
        alpha.to_str().unwrap(),
        "--field",
        "y",
        "--degree",
        "3",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "5/2*y");
}

#[test]
fn usage_and_input_errors_exit_two() {
    // unknown flag: clap reports it
    let out = hopfmi(&["coproduct", "--bogus", "x{-1}"]);
    assert_eq!(out.status.code(), Some(2));

    // syntax error with position
    let out = hopfmi(&["embed", "x{-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));

    // weight error
    let out = hopfmi(&["cuts", "--algebra", "lot", "x{0}"]);
    assert_eq!(out.status.code(), Some(2));

    // alphabet error
    let out = hopfmi(&["embed", "--alphabet", "a,b", "x{q,-1}"]);
    assert_eq!(out.status.code(), Some(2));

    // enumeration bound
    let out = hopfmi(&["enumerate", "--what", "trees", "--degree", "99"]);
    assert_eq!(out.status.code(), Some(2));

    // bad order
    let out = hopfmi(&["coproduct", "--algebra", "lot", "--order", "1", "x{-1}"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn two_letter_alphabet_round() {
    let out = hopfmi(&["--alphabet", "a,b", "embed", "x{b,-1} x{a,0}"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "a[b]");

    let out = hopfmi(&["--alphabet", "a,b", "phi", "a[b]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x{a,0} x{b,-1}");
}

#[test]
fn iterated_coproduct_counit_collapse() {
    // order-3 coproduct of a primitive has exactly the unit-padded terms
    let out = hopfmi(&["coproduct", "--algebra", "lot", "--order", "3", "x{-1}"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "1 ⊗ 1 ⊗ x{-1} + 1 ⊗ x{-1} ⊗ 1 + x{-1} ⊗ 1 ⊗ 1"
    );
}

#[test]
fn cache_roundtrip_and_validation() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("fibers.json");
    let cache_str = cache.to_str().unwrap();

    let out = hopfmi(&["--cache", cache_str, "embed", "x{-1}^2 x{0} x{1}"]);
    assert!(out.status.success());
    assert!(cache.exists());
    let saved = std::fs::read_to_string(&cache).unwrap();
    assert!(saved.contains("x{-1}^2 x{0} x{1}"));

    // reload: identical output
    let again = hopfmi(&["--cache", cache_str, "embed", "x{-1}^2 x{0} x{1}"]);
    assert!(again.status.success());
    assert_eq!(out.stdout, again.stdout);

    // alphabet mismatch: cache ignored with a warning, command still works
    let out = hopfmi(&["--cache", cache_str, "--alphabet", "a,b", "embed", "x{a,-1}"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("ignoring cache"));

    // corrupt an entry: the fertility check must reject it
    corrupt_cache(&cache);
    let out = hopfmi(&["--cache", cache_str, "embed", "x{-1}^2 x{0} x{1}"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cache"));
}

fn corrupt_cache(path: &Path) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entries = doc["entries"].as_object_mut().unwrap();
    let key = entries.keys().next().unwrap().clone();
    entries.insert(key, serde_json::json!(["a[a,a,a,a,a]"]));
    std::fs::write(path, serde_json::to_string(&doc).unwrap()).unwrap();
}

#[test]
fn version_mismatch_skips_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("fibers.json");
    std::fs::write(
        &cache,
        r#"{"version": "0", "alphabet": "a", "entries": {}}"#,
    )
    .unwrap();
    let out = hopfmi(&["--cache", cache.to_str().unwrap(), "embed", "x{-1}"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("ignoring cache"));
}
