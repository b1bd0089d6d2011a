//! End-to-end tests of the binary: exit codes, output shapes, and the
//! byte-stability promise.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_str().unwrap().to_string()
}

fn tenloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tenloc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn info_prints_the_row_sum_table() {
    let out = tenloc(&["--quiet", "info", &fixture("order3_dim4.tensor")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("order 3  dimension 4  stored entries 12"));
    assert!(text.contains("19.156402003990568"));
    assert!(text.lines().any(|l| l.starts_with('3') && l.contains("10")));
    assert!(text.lines().any(|l| l.starts_with('4') && l.contains("18")));
}

#[test]
fn info_on_identity_has_zero_radii() {
    let out = tenloc(&["--quiet", "info", &fixture("diagonal.tensor")]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout_of(&out)
        .lines()
        .skip_while(|l| !l.starts_with("row"))
        .skip(1)
        .take(3)
    {
        assert!(line.trim_end().ends_with('0'), "nonzero radius: {line}");
    }
}

#[test]
fn parse_errors_exit_2_and_name_the_line() {
    let out = tenloc(&["--quiet", "info", &fixture("duplicate.tensor")]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("line 4"), "missing line number: {err}");
}

#[test]
fn missing_file_exits_2() {
    let out = tenloc(&["--quiet", "info", "no-such-file.tensor"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn member_answers_both_ways() {
    let golden = fixture("order3_dim4.tensor");
    let out = tenloc(&["--quiet", "member", &golden, "--set", "omega", "--z", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "true\n");
    let out = tenloc(&["--quiet", "member", &golden, "--set", "gamma", "--z", "100,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "false\n");
}

#[test]
fn member_composes_indices_from_flags() {
    let golden = fixture("order3_dim4.tensor");
    let direct = tenloc(&[
        "--quiet", "member", &golden, "--set", "delta_1_4", "--z", "11,0",
    ]);
    let composed = tenloc(&[
        "--quiet", "member", &golden, "--set", "delta", "--i", "1", "--j", "4", "--z", "11,0",
    ]);
    assert_eq!(stdout_of(&direct), "true\n");
    assert_eq!(stdout_of(&direct), stdout_of(&composed));
}

#[test]
fn member_rejects_bad_region_names_and_indices() {
    let golden = fixture("order3_dim4.tensor");
    for args in [
        vec!["member", &golden, "--set", "sigma", "--z", "0,0"],
        vec!["member", &golden, "--set", "gamma_9", "--z", "0,0"],
        vec!["member", &golden, "--set", "delta_2_2", "--z", "0,0"],
    ] {
        let mut full = vec!["--quiet"];
        full.extend(args);
        let out = tenloc(&full);
        assert_eq!(out.status.code(), Some(2), "args: {full:?}");
    }
}

#[test]
fn certify_reports_verdicts_and_exit_codes() {
    let out = tenloc(&["--quiet", "certify", &fixture("diagonal.tensor")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("gersgorin-exclusion: NONSINGULAR"));
    assert!(text.contains("brauer-exclusion: NONSINGULAR"));

    let out = tenloc(&["--quiet", "certify", &fixture("order3_dim4.tensor")]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout_of(&out);
    assert!(text.contains("gersgorin-exclusion: UNKNOWN"));
    assert!(text.contains("row 2: zero outside the inclusion set"));
}

#[test]
fn certify_brauer_needs_dimension_two() {
    let out = tenloc(&[
        "--quiet", "certify", &fixture("scalar.tensor"), "--method", "brauer",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = tenloc(&[
        "--quiet", "certify", &fixture("scalar.tensor"), "--method", "gersgorin",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("NONSINGULAR"));
}

#[test]
fn eig_is_byte_identical_for_identical_seeds() {
    let golden = fixture("order3_dim4.tensor");
    let args = ["--quiet", "eig", &golden, "--starts", "300", "--seed", "7"];
    let first = tenloc(&args);
    let second = tenloc(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout_of(&first);
    assert!(text.lines().count() > 0);
    for line in text.lines() {
        assert!(line.starts_with("{\"lambda_re\":"));
        assert!(line.ends_with('}'));
    }
}

#[test]
fn eig_on_diagonal_is_exact() {
    let out = tenloc(&["--quiet", "eig", &fixture("diagonal.tensor")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("\"residual\":0.0"));
    assert!(text.contains("\"lambda_re\":3.0,\"lambda_im\":0.0"));
    assert!(text.contains("\"lambda_re\":-2.0,\"lambda_im\":1.0"));
    assert!(text.contains("\"lambda_re\":0.0,\"lambda_im\":4.0"));
}

#[test]
fn region_formats_have_the_right_shape() {
    let golden = fixture("order3_dim4.tensor");
    let svg = tenloc(&[
        "--quiet", "region", &golden, "--set", "gamma", "--set", "omega",
        "--resolution", "50x40", "--format", "svg",
    ]);
    assert_eq!(svg.status.code(), Some(0));
    let text = stdout_of(&svg);
    assert!(text.starts_with("<svg"));
    assert!(text.contains("width=\"50\" height=\"40\""));

    let ppm = tenloc(&[
        "--quiet", "region", &golden, "--set", "theta", "--resolution", "30x20",
        "--format", "ppm",
    ]);
    assert_eq!(ppm.status.code(), Some(0));
    assert!(ppm.stdout.starts_with(b"P6\n30 20\n255\n"));
    assert_eq!(ppm.stdout.len(), b"P6\n30 20\n255\n".len() + 30 * 20 * 3);

    let csv = tenloc(&[
        "--quiet", "region", &golden, "--set", "gamma", "--set", "k",
        "--resolution", "16x12", "--format", "csv",
    ]);
    assert_eq!(csv.status.code(), Some(0));
    let text = stdout_of(&csv);
    assert_eq!(text.lines().next(), Some("re,im,gamma,k"));
    assert_eq!(text.lines().count(), 1 + 16 * 12);
}

#[test]
fn region_honors_an_explicit_window() {
    let golden = fixture("order3_dim4.tensor");
    let out = tenloc(&[
        "--quiet", "region", &golden, "--set", "gamma", "--resolution", "4x4",
        "--window", "-1,1,-1,1", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    // first pixel center of a [-1,1]^2 window at 4x4
    assert!(text.lines().nth(1).unwrap().starts_with("-0.75,0.75,"));
}

#[test]
fn region_marks_eigenvalues_in_svg() {
    let golden = fixture("order3_dim4.tensor");
    let out = tenloc(&[
        "--quiet", "region", &golden, "--set", "gamma", "--resolution", "60x40",
        "--mark-eigenvalues", "--starts", "200",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("<path"));
}

#[test]
fn region_writes_to_a_file() {
    let golden = fixture("order3_dim4.tensor");
    let path = std::env::temp_dir().join(format!("tenloc-region-{}.ppm", std::process::id()));
    let out = tenloc(&[
        "--quiet", "region", &golden, "--set", "omega", "--resolution", "20x10",
        "--format", "ppm", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let bytes = std::fs::read(&path).unwrap();
    assert!(bytes.starts_with(b"P6\n20 10\n255\n"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn verify_passes_on_the_shipped_examples() {
    for file in ["order3_dim4.tensor", "diagonal.tensor", "scalar.tensor"] {
        let out = tenloc(&["--quiet", "verify", &fixture(file), "--grid", "80"]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        let text = stdout_of(&out);
        assert!(text.contains("verify: PASS"), "{file}: {text}");
        assert!(!text.contains("FAIL"), "{file}: {text}");
    }
}

#[test]
fn verify_report_lists_the_grid_checks() {
    let out = tenloc(&[
        "--quiet", "verify", &fixture("order3_dim4.tensor"), "--starts", "400",
        "--grid", "60",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("omega inside gamma on the 60x60 grid"));
    assert!(text.contains("theta inside k on the 60x60 grid"));
    assert!(text.contains("k inside gamma on the 60x60 grid"));
    assert!(text.starts_with("oracle:"));
}

#[test]
fn banner_goes_to_stderr_and_quiet_silences_it() {
    let golden = fixture("order3_dim4.tensor");
    let loud = tenloc(&["info", &golden]);
    assert!(stderr_of(&loud).contains("tenloc"));
    let quiet = tenloc(&["--quiet", "info", &golden]);
    assert!(stderr_of(&quiet).is_empty());
    assert_eq!(loud.stdout, quiet.stdout);
}

#[test]
fn bad_flag_values_exit_nonzero_without_panicking() {
    let golden = fixture("order3_dim4.tensor");
    for args in [
        vec!["member", &golden, "--set", "gamma", "--z", "zebra"],
        vec!["member", &golden, "--set", "gamma", "--z", "1,2", "--tol", "-0.5"],
        vec!["region", &golden, "--set", "gamma", "--resolution", "1x1"],
        vec!["region", &golden, "--set", "gamma", "--window", "2,1,0,1"],
        vec!["eig", &golden, "--starts", "0"],
    ] {
        let mut full = vec!["--quiet"];
        full.extend(args.clone());
        let out = tenloc(&full);
        let code = out.status.code();
        assert!(code == Some(2), "args {args:?} gave {code:?}");
    }
}
