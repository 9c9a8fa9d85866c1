use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// (exit code, stdout, stderr) of an in-process run.
fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("adams-spectra").chain(args.iter().copied());
    let code = adams_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = run(&full);
    let value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: stdout {out:?} stderr {err:?}"));
    (code, value)
}

#[test]
fn charpoly_example() {
    let (code, v) = run_json(&["charpoly", "--preset", "ssym", "--n", "-1", "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], json!(1));
    assert_eq!(v["factors"], json!([{"eigenvalue": 1, "mult": 1}, {"eigenvalue": -1, "mult": 5}]));
}

#[test]
fn trace_and_euler_examples() {
    assert_eq!(run(&["trace", "--preset", "peak", "--n", "-1", "--max-degree", "8"]).1, "1,-1,1,-2,1,-3,2,-5,3\n");
    assert_eq!(run(&["euler", "invert", "--h", "1,1,2,6,24,120,720"]).1, "1,1,4,17,92,572\n");
    assert_eq!(run(&["euler", "forward", "--g", "1,1,4,17,92,572"]).1, "1,1,2,6,24,120,720\n");
}

#[test]
fn custom_inputs_report_all_three_sequences() {
    let (_, from_h) = run_json(&["trace", "--h", "1,1,2,6,24", "--max-degree", "4"]);
    let (_, from_g) = run_json(&["trace", "--g", "1,1,4,17"]);
    let (_, from_v) = run_json(&["trace", "--v", "1,1,3,13"]);
    let file = fixtures().join("ssym_h.json");
    let (_, from_file) = run_json(&["trace", "--file", file.to_str().unwrap(), "--max-degree", "4"]);
    for v in [&from_g, &from_v, &from_file] {
        for key in ["h", "g", "v"] {
            assert_eq!(v["profile"][key], from_h["profile"][key], "{key}");
        }
        assert_eq!(v["values"], from_h["values"]);
    }
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = ["tracegf", "--preset", "fibonacci", "--max-degree", "12", "--format", "json"];
    assert_eq!(run(&args).1, run(&args).1);
    let args = ["verify", "--suite", "figures", "--format", "json"];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["frobnicate"][..], &["trace"], &["trace", "--preset", "sym", "--h", "1,1"], &["euler", "invert"], &["trace", "--preset", "sym", "--n", "x"]] {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(err.contains("Usage") || err.contains("--help"), "{args:?}: {err}");
    }
}

#[test]
fn domain_errors_carry_name_and_input() {
    let (code, out, err) = run(&["euler", "invert", "--h", "1,2,1"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("NotRealizable") && err.contains("--h 1,2,1"), "{err}");
    let (code, v) = run_json(&["asym", "--rational", "1;1,0,-1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["name"], json!("HypothesisViolated"));
    assert_eq!(v["error"]["input"][2], json!("1;1,0,-1"));
    let (code, _, err) = run(&["charpoly", "--h", "1,1,2", "--m", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("DegreeOutOfRange"));
    let (code, _, err) = run(&["palindromes", "--h", "1,2,1", "--force-nonrealizable"]);
    assert_eq!(code, 1);
    assert!(err.contains("NoAlphabet"), "{err}");
}

#[test]
fn forced_nonrealizable_profiles_evaluate() {
    let (code, v) = run_json(&["trace", "--h", "1,2,1", "--force-nonrealizable"]);
    assert_eq!(code, 0);
    assert_eq!(v["profile"]["realizable"], json!(false));
}

#[test]
fn all_trace_routes_agree() {
    let (code, v) = run_json(&["trace", "--preset", "qsym", "--max-degree", "12", "--route", "all"]);
    assert_eq!(code, 0);
    assert_eq!(v["routes"].as_array().unwrap().len(), 4);
    assert_eq!(v["values"][11], json!(-32));
}

#[test]
fn qtrace_and_species() {
    let (_, v) = run_json(&["qtrace", "--v", "1,1", "--max-degree", "3", "--charpoly"]);
    assert_eq!(v["degrees"][3]["trace"], json!("-q^3"));
    let (_, v) = run_json(&["qtrace", "--v", "3", "--max-degree", "4", "--q", "2"]);
    // (-1)^m 3^{ceil(m/2)} q^{C(m,2)} at q = 2
    assert_eq!(v["degrees"][4]["value"], json!(9 * 64));
    let (_, v) = run_json(&["species", "--preset", "Pi", "--max-degree", "9"]);
    assert_eq!(v["antipode_trace"], json!([1, -1, 0, 1, 1, -2, -9, -9, 50, 267]));
    let (_, v) = run_json(&["species", "--linear-orders", "0,1,1,1,1,1", "--n", "2"]);
    assert_eq!(v["antipode_trace"], json!([1, -1, -1, -1, -1, -1]));
    assert_eq!(v["charpolys"].as_array().unwrap().len(), 6);
}

#[test]
fn witt_and_palindromes() {
    assert_eq!(run(&["witt", "--v", "2", "--max-degree", "6"]).1, "2,1,2,3,6,9\n");
    let (_, v) = run_json(&["palindromes", "--v", "1,1,3,13,71,461"]);
    assert_eq!(v["degrees"][3]["trace"], json!(-4));
    let csv = run(&["palindromes", "--v", "1,1", "--max-degree", "3", "--format", "csv"]).1;
    assert!(csv.starts_with("k\\m,0,1,2,3\n"));
}

#[test]
fn asymptotics_meet_tolerances() {
    let (code, v) = run_json(&["asym", "--preset", "fibonacci", "--at", "40,80"]);
    assert_eq!(code, 0);
    let rel = |i: usize| v["predictions"][i]["relative_error"].as_str().unwrap().parse::<f64>().unwrap();
    assert!(rel(0) < 1e-2 && rel(1) < 1e-3);
}

#[test]
fn verify_suites_pass() {
    for suite in ["figures", "identities", "qidentities", "species"] {
        let (code, v) = run_json(&["verify", "--suite", suite]);
        assert_eq!(code, 0, "{suite}: {v}");
        assert_eq!(v["passed"], json!(true));
    }
    let (code, v) = run_json(&["verify", "--suite", "oracle", "--alphabet", "1,1", "--max-degree", "4", "--n", "-2,-1,0,1,2"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["ok"] == json!(true)));
    let (code, v) = run_json(&["verify", "--suite", "oracle", "--n", "", "--alphabet", "", "--max-degree", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], json!(true));
}

fn cache_with_fixtures() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for f in ["b003319.txt", "b112354.txt"] {
        std::fs::copy(fixtures().join("oeis").join(f), dir.path().join(f)).unwrap();
    }
    dir
}

#[test]
fn oeis_matches_from_cache() {
    let dir = cache_with_fixtures();
    let cache = dir.path().to_str().unwrap();
    let (code, v) = run_json(&["oeis", "A003319", "--preset", "ssym", "--quantity", "v", "--cache-dir", cache]);
    assert_eq!(code, 0, "{v}");
    assert_eq!((v["matched"].clone(), v["start"].clone(), v["compared"].clone()), (json!(true), json!(1), json!(10)));
    assert_eq!(v["offline"], json!(true));
    let (code, v) = run_json(&["oeis", "A112354", "--h", "1,1,2,6,24,120,720", "--quantity", "g", "--cache-dir", cache]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["compared"], json!(6));
    let (code, v) = run_json(&["oeis", "A003319", "--values", "1,1,3,14", "--start", "1", "--cache-dir", cache]);
    assert_eq!(code, 1);
    assert_eq!(v["first_mismatch"]["n"], json!(4));
    let raw = std::fs::read(fixtures().join("oeis/b003319.txt")).unwrap();
    assert_eq!(std::fs::read(dir.path().join("b003319.txt")).unwrap(), raw);
}

#[test]
fn oeis_offline_miss() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = run_json(&["oeis", "A999999", "--values", "1", "--cache-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["name"], json!("CacheMiss"));
}

#[test]
fn binary_uses_cache_environment_variable() {
    let dir = cache_with_fixtures();
    let out = Command::new(env!("CARGO_BIN_EXE_adams-spectra"))
        .args(["oeis", "A003319", "--preset", "ssym", "--quantity", "v", "--max-degree", "6"])
        .env("ADAMS_SPECTRA_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("match"));
    let out = Command::new(env!("CARGO_BIN_EXE_adams-spectra")).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify"));
}
