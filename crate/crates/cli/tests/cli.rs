use std::process::{Command, Output};

use serde_json::Value;

fn sdirac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdirac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

const K5_GOLDEN: &str = r#"{"k":5,"m":3,"basis":"L-circ","eigenvalues":[-6.0,0.0,6.0],"kernel_dim":1,"abs_det":0,"charpoly":[0,-36,0,1],"p_diag":[32,8,-40],"checks":{"assembly-match":true,"symmetry":true,"spectra-coincide":true,"kernel-rule":true,"p-eigenvalues":true,"norm-bound":true},"signed_det":0}
"#;

#[test]
fn spectrum_k5_json_golden() {
    let out = sdirac(&["spectrum", "-k", "5", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), K5_GOLDEN);
}

#[test]
fn spectrum_k3_json_values() {
    let out = sdirac(&["spectrum", "-k", "3"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let s6 = 6f64.sqrt();
    let ev: Vec<f64> = v["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert!((ev[0] + s6).abs() < 1e-12 && (ev[1] - s6).abs() < 1e-12);
    assert_eq!(v["signed_det"].as_i64(), Some(-6));
    assert_eq!(v["abs_det"].as_i64(), Some(6));
    assert_eq!(v["kernel_dim"].as_u64(), Some(0));
    assert_eq!(v["p_diag"], serde_json::json!([12, -12]));
}

#[test]
fn spectrum_k1_csv_row() {
    let out = sdirac(&["spectrum", "-k", "1", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "k,kernel_dim,abs_det,eigenvalues\n1,1,0,0.0\n"
    );
}

#[test]
fn spectrum_csv_rows_ordered() {
    let out = sdirac(&["spectrum", "-k", "1..9", "--format", "csv", "--jobs", "4"]);
    let ks: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(ks, ["1", "3", "5", "7", "9"]);
    assert!(stdout(&out).contains("\n7,0,1260,"));
}

#[test]
fn spectrum_table_has_header() {
    let out = sdirac(&["spectrum", "-k", "3,5", "--format", "table"]);
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().contains("eigenvalues"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn even_k_is_rejected() {
    let out = sdirac(&["spectrum", "-k", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("k must be odd: U_k is trivial for even k"));
    assert!(stdout(&out).is_empty());

    assert_eq!(sdirac(&["spectrum", "-k", "1,3,8"]).status.code(), Some(2));
    assert_eq!(sdirac(&["verify", "-k", "2"]).status.code(), Some(2));
    assert_eq!(sdirac(&["charpoly", "-k", "6"]).status.code(), Some(2));
}

#[test]
fn invalid_arguments_exit_2() {
    assert_eq!(sdirac(&["spectrum", "-k", "x"]).status.code(), Some(2));
    assert_eq!(sdirac(&["spectrum", "-k", "4..4"]).status.code(), Some(2));
    assert_eq!(
        sdirac(&["spectrum", "-k", "3", "--tol-eig", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sdirac(&["spectrum", "-k", "3", "--tol-match", "-1e-3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sdirac(&["spectrum", "-k", "3", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sdirac(&["verify", "-k", "3", "--check", "bogus"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn charpoly_examples() {
    for (k, want) in [
        ("3", "[-6, 0, 1]\n"),
        ("5", "[0, -36, 0, 1]\n"),
        ("1", "[0, 1]\n"),
    ] {
        let out = sdirac(&["charpoly", "-k", k]);
        assert!(out.status.success());
        assert_eq!(stdout(&out), want);
    }
    let out = sdirac(&["charpoly", "-k", "1..5", "--format", "csv"]);
    assert_eq!(stdout(&out), "k,charpoly\n1,0;1\n3,-6;0;1\n5,0;-36;0;1\n");
}

#[test]
fn verify_single_check() {
    let out = sdirac(&["verify", "-k", "3", "--check", "spectra-coincide"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("PASS k=3 spectra-coincide residual="));
    let residual: f64 = text.trim().rsplit('=').next().unwrap().parse().unwrap();
    assert!(residual <= 1e-10);
}

#[test]
fn verify_full_suite_passes() {
    let out = sdirac(&["verify", "-k", "1..31"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
    assert!(text.contains("PASS k=31 eigen-residual"));
    assert!(text.contains("PASS k=7 det-magnitude"));
}

#[test]
fn verify_failure_exits_3_and_reports_everything() {
    let out = sdirac(&[
        "verify",
        "-k",
        "1..31",
        "--check",
        "symmetry",
        "--check",
        "kernel-rule",
        "--tol-eig",
        "1e-300",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 32);
    assert!(text
        .lines()
        .any(|l| l.starts_with("FAIL ") && l.contains("symmetry")));
    assert!(text
        .lines()
        .filter(|l| l.contains("kernel-rule"))
        .all(|l| l.starts_with("PASS ")));
}

#[test]
fn verify_json_lines() {
    let out = sdirac(&[
        "verify", "-k", "5", "--check", "symmetry", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["k"], 5);
    assert_eq!(v["check"], "symmetry");
    assert_eq!(v["passed"], true);
}

#[test]
fn json_round_trips_byte_identically() {
    let out = sdirac(&["spectrum", "-k", "1..31", "--mode", "both"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 16);
    for line in text.lines() {
        let parsed: Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&parsed).unwrap(), line);
    }
}

#[test]
fn big_determinants_are_exact() {
    let out = sdirac(&["spectrum", "-k", "99"]);
    let line = stdout(&out);
    let v: Value = serde_json::from_str(line.trim()).unwrap();
    let abs_det = v["abs_det"].to_string();
    assert!(abs_det.len() > 100 && abs_det.bytes().all(|b| b.is_ascii_digit()));
    // m = 50 and m/2 is odd, so det D_99 = p(0) = −∏ a²
    assert_eq!(v["signed_det"].to_string(), format!("-{abs_det}"));
    assert!(line.contains(&format!("\"abs_det\":{abs_det},")));
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("sdirac-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let out = sdirac(&[
        "spectrum",
        "-k",
        "1..11",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let direct = sdirac(&["spectrum", "-k", "1..11", "--format", "csv"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unwritable_out_exits_1() {
    let out = sdirac(&[
        "spectrum",
        "-k",
        "3",
        "--out",
        "/nonexistent-dir/sub/report.json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cannot write"));
}

#[test]
fn exact_mode_matches_float_mode() {
    let float = sdirac(&["spectrum", "-k", "1..15"]);
    let exact = sdirac(&["spectrum", "-k", "1..15", "--mode", "exact"]);
    for (a, b) in stdout(&float).lines().zip(stdout(&exact).lines()) {
        let (a, b): (Value, Value) = (
            serde_json::from_str(a).unwrap(),
            serde_json::from_str(b).unwrap(),
        );
        assert_eq!(a["charpoly"], b["charpoly"]);
        assert_eq!(a["checks"], b["checks"]);
        for (x, y) in a["eigenvalues"]
            .as_array()
            .unwrap()
            .iter()
            .zip(b["eigenvalues"].as_array().unwrap())
        {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            assert!((x - y).abs() <= 1e-12 * (1.0 + x.abs()));
        }
    }
}
