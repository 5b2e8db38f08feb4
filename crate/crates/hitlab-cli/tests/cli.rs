//! End-to-end runs of the `hitlab` binary: exit codes, output determinism,
//! the cache lifecycle, and the verification harness against the shipped
//! corpus.

use std::path::Path;
use std::process::{Command, Output};

fn hitlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hitlab"))
        .args(args)
        .env_remove("HITLAB_CACHE")
        .output()
        .expect("binary should launch")
}

fn hitlab_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hitlab"));
    cmd.args(args).env_remove("HITLAB_CACHE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary should launch")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr should be UTF-8")
}

#[test]
fn verify_passes_and_surfaces_the_printed_order_warnings() {
    let out = hitlab(&["verify"]);
    let text = stdout(&out);
    assert!(out.status.success(), "{text}\n{}", stderr(&out));
    assert!(text.contains("0 failed"), "{text}");
    assert!(text.contains("b5_deg5"), "{text}");
    // The degree-5 table keeps the printed block order; the harness must
    // call that out rather than silently resorting or failing.
    assert!(text.contains("rows out of ascending order"), "{text}");
    assert!(text.contains("kept in printed order"), "{text}");
    // Degree-35 targets wait for --extended.
    assert!(text.contains("skip"), "{text}");
}

#[test]
fn verify_reports_structured_statuses_in_json() {
    let out = hitlab(&["verify", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["ok"], true);
    let targets = v["targets"].as_array().expect("array of targets");
    assert!(targets.len() >= 20);
    for t in targets {
        let status = t["status"].as_str().unwrap();
        assert!(status == "ok" || status == "skipped", "{t}");
    }
    let deg5 = targets.iter().find(|t| t["id"] == "b5_deg5").expect("degree-5 target");
    assert_eq!(deg5["expected"], 46);
    assert_eq!(deg5["computed"], 46);
    assert!(!deg5["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn verify_with_an_unknown_filter_is_a_usage_error() {
    let out = hitlab(&["verify", "no_such_table"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no_such_table"));
}

#[test]
fn json_output_is_byte_identical_across_cold_runs() {
    let first = hitlab(&["--format", "json", "dim", "4", "7,15"]);
    let second = hitlab(&["--format", "json", "--threads", "2", "dim", "4", "7,15"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let v: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(v[0]["degree"], 7);
    assert_eq!(v[0]["dim"], 35);
    assert_eq!(v[1]["degree"], 15);
    assert_eq!(v[1]["dim"], 75);
    assert_eq!(v[1]["monomials"], 816);
}

#[test]
fn the_budget_gate_blocks_degree_35_without_the_flag() {
    let out = hitlab(&["dim", "5", "35"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--extended"), "{}", stderr(&out));

    let out = hitlab(&["--extended", "dim", "5", "35"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("1117"), "{}", stdout(&out));
}

#[test]
fn basis_slices_agree_with_the_dimension_report() {
    let out = hitlab(&["--format", "json", "basis", "5", "16", "--part", "zero", "--count-only"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 255);
    assert!(v.get("monomials").is_none(), "count-only output carries no rows");

    let out = hitlab(&["--format", "json", "basis", "5", "16", "--weight", "4,2,2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 210);
    assert_eq!(v["monomials"].as_array().unwrap().len(), 210);
}

#[test]
fn check_hit_tells_hit_from_nonzero_residue() {
    let out = hitlab(&["check-hit", "x1^2 x2 + x1 x2^2", "--k", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("hit"), "{}", stdout(&out));

    let out = hitlab(&["check-hit", "x1^2 x2", "--k", "2"]);
    assert!(out.status.success(), "a nonzero residue is an answer, not an error");
    assert!(stdout(&out).contains("not hit"), "{}", stdout(&out));

    let out = hitlab(&["check-hit", "x1 + x1^2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2), "mixed degrees are a usage error");
}

#[test]
fn cache_lifecycle_warm_serve_corrupt_evict() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();

    let out = hitlab(&["--cache-dir", cache, "cache", "warm", "4", "15"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("dim 75"));
    let stored: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| {
            let name = e.unwrap().file_name().into_string().unwrap();
            name.ends_with(".bin").then_some(name)
        })
        .collect();
    assert!(!stored.is_empty());

    let baseline = hitlab(&["--cache-dir", cache, "--format", "json", "basis", "4", "15"]);
    let served = hitlab(&["--cache-dir", cache, "--format", "json", "basis", "4", "15"]);
    assert_eq!(baseline.stdout, served.stdout);

    // A trashed artifact is detected, recomputed, and rewritten in place.
    let victim = dir.path().join(&stored[0]);
    std::fs::write(&victim, b"not an echelon form").unwrap();
    let recomputed = hitlab(&["--cache-dir", cache, "--format", "json", "basis", "4", "15"]);
    assert!(recomputed.status.success());
    assert_eq!(baseline.stdout, recomputed.stdout);
    assert!(std::fs::metadata(&victim).unwrap().len() > 100, "repaired on the way through");

    let inspect = hitlab(&["--cache-dir", cache, "cache", "inspect"]);
    assert!(stdout(&inspect).contains("rank"), "{}", stdout(&inspect));

    let evict = hitlab(&["--cache-dir", cache, "cache", "evict"]);
    assert!(stdout(&evict).contains("removed"), "{}", stdout(&evict));
    let inspect = hitlab(&["--cache-dir", cache, "cache", "inspect"]);
    assert!(stdout(&inspect).contains("empty"), "{}", stdout(&inspect));

    // No cache dir at all is a usage error for cache management.
    let out = hitlab(&["cache", "inspect"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn the_environment_variable_sets_the_cache_dir_and_the_flag_beats_it() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let count_bins = |p: &Path| {
        std::fs::read_dir(p)
            .map(|d| {
                d.filter(|e| {
                    e.as_ref().unwrap().file_name().to_string_lossy().ends_with(".bin")
                })
                .count()
            })
            .unwrap_or(0)
    };

    let out = hitlab_env(
        &["cache", "warm", "3", "8"],
        &[("HITLAB_CACHE", env_dir.path().to_str().unwrap())],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(count_bins(env_dir.path()) > 0);

    let out = hitlab_env(
        &["--cache-dir", flag_dir.path().to_str().unwrap(), "cache", "warm", "3", "9"],
        &[("HITLAB_CACHE", env_dir.path().to_str().unwrap())],
    );
    assert!(out.status.success());
    let spillover = std::fs::read_dir(env_dir.path())
        .unwrap()
        .any(|e| e.unwrap().file_name().to_string_lossy().contains("_d9_"));
    assert!(!spillover, "the explicit flag should win over the environment");
    assert!(count_bins(flag_dir.path()) > 0);
}

/// Artifacts are keyed by generator policy, so switching policies on the
/// same directory is a miss by design, never a stale hit.
#[test]
fn a_policy_change_is_a_cache_miss_by_design() {
    use hitlab_core::hit::{EngineOptions, Quotient};
    use hitlab_core::steenrod::GeneratorPolicy;

    let dir = tempfile::tempdir().unwrap();
    let mut opts = EngineOptions {
        cache_dir: Some(dir.path().to_path_buf()),
        strict_cache: true,
        ..EngineOptions::default()
    };
    let with_two_powers = Quotient::build(3, 8, &opts).unwrap();
    let before = std::fs::read_dir(dir.path()).unwrap().count();

    opts.policy = GeneratorPolicy::AllDegrees;
    let with_all_degrees = Quotient::build(3, 8, &opts).unwrap();
    let after = std::fs::read_dir(dir.path()).unwrap().count();

    assert_eq!(with_two_powers.basis(), with_all_degrees.basis());
    assert!(after > before, "second policy must write its own artifacts");
}
