use std::process::{Command, Output};

use ortega::corpus::EMBEDDED_CORPUS;

fn ortega(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ortega"))
        .args(args)
        .env_remove("CORPUS_PATH")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn approx_perfect_square() {
    let o = ortega(&["approx", "9", "--seeds", "heron"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "exact: 3\n"));
}

#[test]
fn approx_80_runs_to_the_edition_value() {
    let o = ortega(&["approx", "80", "--seeds", "heron", "--stop", "optimal-after", "8+17/18"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "row  lower    upper    upper error\n\
         \x20 1  8+16/17  9        1\n\
         \x20 2  8+16/17  8+17/18  1/324\n\
         final: 8+16/17 < sqrt(80) < 8+17/18\n\
         remainder n - lower^2 = 16/289 (not optimal); upper^2 - n = 1/324 (optimal)\n\
         stopped at: first optimal upper bound from 8+17/18 on\n"
    );
}

#[test]
fn approx_80_strict_optimal_stops_at_the_seed_row() {
    let o = ortega(&["approx", "80", "--stop", "optimal", "--format", "csv"]);
    assert_eq!(stdout(&o), "index,lower,upper,upper_error\n1,8+16/17,9,1\n");
}

#[test]
fn approx_scaled_raw_2000() {
    let o = ortega(&[
        "approx", "2000", "--seeds", "scaled", "100", "5", "--policy", "raw", "--stop", "optimal",
        "--format", "csv",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 82);
    assert_eq!(lines[48], "48,44+44/61,44+2079/2882,89/68644");
    assert_eq!(lines[81], "81,44+10824/15005,44+165055/228811,1/432681601");
}

#[test]
fn output_is_deterministic() {
    let args = ["approx", "127+3/11", "--seeds", "integer", "--stop", "rows", "50"];
    assert_eq!(ortega(&args).stdout, ortega(&args).stdout);
    assert_eq!(ortega(&["verify"]).stdout, ortega(&["verify"]).stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&ortega(&["approx", "80", "--frobnicate"])), 2);
    assert_eq!(code(&ortega(&["approx", "80", "--policy", "lazy"])), 2);
    assert_eq!(code(&ortega(&["approx", "8/0"])), 2);
    assert_eq!(code(&ortega(&["approx", "80", "--stop", "target", "x"])), 2);
    assert_eq!(code(&ortega(&["nonsense"])), 2);
}

#[test]
fn invalid_seeds_exit_1() {
    let o = ortega(&["approx", "80", "--seeds", "custom", "9", "10"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid seeds"));
}

#[test]
fn verify_pristine() {
    let o = ortega(&["verify"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("2 known errata, 0 mismatches\n"));
    assert!(stdout(&o).contains("ERRATUM chuquet n=12 upper"));
}

#[test]
fn verify_only_section2_checks_16_entries() {
    let o = ortega(&["verify", "--only", "section2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("section2 ")).count(), 16);
    assert!(out.contains("\n16 tables, "));
}

#[test]
fn verify_broken_corpus_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.txt");
    let text = EMBEDDED_CORPUS.replace("row|3|2+0/1|2+1/3|1/9", "row|3|2+0/1|2+1/3|1/8");
    assert_ne!(text, EMBEDDED_CORPUS);
    std::fs::write(&path, text).unwrap();
    let o = ortega(&["verify", "--corpus", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("MISMATCH traces s3-5+1/3 row 3: upper error: printed 1/8, recomputed 1/9"));

    let env = Command::new(env!("CARGO_BIN_EXE_ortega"))
        .arg("verify")
        .env("CORPUS_PATH", &path)
        .output()
        .unwrap();
    assert_eq!(code(&env), 1);
}

#[test]
fn unloadable_corpus_exits_3() {
    assert_eq!(code(&ortega(&["verify", "--corpus", "/nonexistent/corpus"])), 3);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "entry|1|128\n").unwrap();
    let o = ortega(&["chuquet", "--corpus", path.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn pell_examples() {
    let o = ortega(&["pell", "128"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("577/51 = 11+16/51, error 1/2601\n"));
    assert!(stdout(&ortega(&["pell", "2"])).starts_with("3/2 "));
    assert!(stdout(&ortega(&["pell", "5"])).starts_with("9/4 "));
    assert_eq!(code(&ortega(&["pell", "49"])), 1);
    assert_eq!(code(&ortega(&["pell", "5+1/3"])), 1);
}

#[test]
fn chuquet_table() {
    let o = ortega(&["chuquet"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("12  upper  3+181/390      1/1432809      1/152100     ERRATUM"), "{out}");
}

#[test]
fn scale_derive_default() {
    let o = ortega(&["scale-derive"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("= 44+44/61\n"));
    assert!(out.contains("final: 44+10824/15005 < sqrt(2000) < 44+165055/228811\n"));
}
