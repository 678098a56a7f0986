use std::path::Path;
use std::process::{Command, Output};

use nilcount_core::table::CountTable;

fn nilcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcount")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = nilcount(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn table_one_csv() {
    let csv = stdout(&["table", "T1", "--n", "3..10"]);
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines[0], "n,identity,presentation");
    assert_eq!(lines[6], "8,147348275209800,493024606840");
    assert_eq!(lines[8], "10,90116197775746464859791750,120455109059841172414778");
    assert!(!csv.contains('\r'));
}

#[test]
fn table_three_with_oracle_column() {
    let csv = stdout(&["table", "T3", "--n", "3..7", "--allow-slow"]);
    let oracle: Vec<_> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().to_string()).collect();
    assert_eq!(oracle, ["1", "9", "114", "4629", "1198759"]);
}

#[test]
fn oracle_cells_past_the_horizon_are_dashes() {
    let csv = stdout(&["table", "T5", "--n", "10..10"]);
    assert_eq!(csv.lines().nth(1).unwrap(), "10,-,12417282092156403521,-");
}

#[test]
fn json_round_trips() {
    let json = stdout(&["--format", "json", "table", "T4", "--n", "3..8", "--terms"]);
    let table = CountTable::from_json(&json).unwrap();
    assert_eq!(table.to_json(), json);
    assert!(json.contains("\"value\": \"1851244\""));
    assert!(json.contains("\"value\": null"));
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&["--format", "json", "bounds", "--kind", "iso_exact", "--n", "3..9", "--terms"]);
    let b = stdout(&["--threads", "1", "--format", "json", "bounds", "--kind", "iso_exact", "--n", "3..9", "--terms"]);
    assert_eq!(a, b);
}

#[test]
fn bounds_rational_and_terms() {
    let csv = stdout(&["bounds", "--kind", "semirigid_iso_bound", "--n", "7", "--rational"]);
    assert_eq!(csv, "n,semirigid_iso_bound\n7,2398741/2\n");
    let terms = stdout(&["bounds", "--kind", "semirigid-iso-bound", "--n", "5", "--terms"]);
    assert!(terms.contains("5,semirigid_iso_bound,3,\"1^3\",511/6"));
}

#[test]
fn exact_per_rank() {
    assert_eq!(stdout(&["exact", "--n", "6..8"]), "n,iso_exact\n6,4671\n7,1199989\n8,3661522792\n");
    let per_rank = stdout(&["exact", "--n", "5", "--per-rank"]);
    assert_eq!(per_rank, "n,r,iso_exact\n5,1,0\n5,2,15\n5,3,103\n");
}

#[test]
fn fixed_and_oracle_fixed_agree() {
    assert_eq!(stdout(&["fixed", "--lambda", "2^1", "--k", "2"]), "lambda,k,fixed\n\"2^1\",2,5\n");
    assert_eq!(stdout(&["oracle", "fixed", "--r", "2", "--k", "2", "--perm", "(0 1)"]), "r,k,fixed\n2,2,5\n");
    assert_eq!(stdout(&["oracle", "fixed", "--r", "2", "--k", "1"]), "r,k,fixed\n2,1,15\n");
}

#[test]
fn oracle_report() {
    let csv = stdout(&["oracle", "--n", "5"]);
    let all = csv.lines().last().unwrap();
    assert_eq!(all, "5,all,536,11720,118,84,114,80,23,50,81,48");
    let json = stdout(&["oracle", "--n", "4", "--report", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["counts"]["iso_commutative"], "5");
}

#[test]
fn oracle_cap_is_enforced() {
    let out = nilcount(&["oracle", "--n", "7"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--allow-slow"));
}

#[test]
fn stats_json() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["stats", "--lambda", "1^2,2^1"])).unwrap();
    assert_eq!(v["weight"], "4");
    assert_eq!(v["beta"]["1"], 10);
    assert_eq!(v["beta"]["2"], 6);
    assert_eq!((v["delta"].as_u64(), v["gamma"].as_u64()), (Some(4), Some(7)));
}

#[test]
fn rejects_bad_input() {
    assert!(!nilcount(&["table", "T1", "--n", "2..5"]).status.success());
    assert!(!nilcount(&["table", "T1", "--n", "9..5"]).status.success());
    assert!(!nilcount(&["bounds", "--kind", "nope"]).status.success());
    assert!(!nilcount(&["stats", "--lambda", "0^1"]).status.success());
}

#[test]
fn verify_fast_passes() {
    let report = stdout(&["verify", "fast"]);
    assert!(report.ends_with("all checks passed\n"), "{report}");
}

fn flip_middle_byte(path: &Path) {
    let mut bytes = std::fs::read(path).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0x01;
    std::fs::write(path, bytes).unwrap();
}

#[test]
fn cache_save_load_and_fault_injection() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("stirling.bin");
    let cache = cache.to_str().unwrap();

    let cold = stdout(&["table", "T1", "--n", "3..10"]);
    stdout(&["cache", "save", cache, "--max-n", "80"]);
    assert!(stdout(&["cache", "load", cache]).contains("row 80"));
    assert_eq!(stdout(&["--cache", cache, "table", "T1", "--n", "3..10"]), cold);

    flip_middle_byte(Path::new(cache));
    assert!(!nilcount(&["cache", "load", cache]).status.success());
    let verify = nilcount(&["verify", "fast", "--cache", cache]);
    assert!(!verify.status.success());
    assert!(String::from_utf8_lossy(&verify.stdout).contains("first failure in stirling_cache"));

    // a corrupt cache is refused, recomputed, and replaced
    let warm = nilcount(&["--cache", cache, "table", "T1", "--n", "3..10"]);
    assert!(String::from_utf8_lossy(&warm.stderr).contains("ignoring cache"));
    assert_eq!(String::from_utf8(warm.stdout).unwrap(), cold);
    assert!(stdout(&["cache", "load", cache]).starts_with("loaded"));

    stdout(&["cache", "clear", cache]);
    assert!(!Path::new(cache).exists());
}
