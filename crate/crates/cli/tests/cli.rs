use std::path::PathBuf;
use std::process::Command;

use etalink::eta::{rho, EvalOptions};
use etalink::Mode;
use etalink_cli::formats::{parse_rep, parse_seifert, rep_to_file, FormatError};
use etalink_cli::report::Verdict;
use etalink_cli::scan::{run_scan, to_csv, Family, ScanSpec};
use etalink_cli::{fixtures, run};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["etalink"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_etalink");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["validate", &fixture("ko_10x10")]), 0);
    assert_eq!(status(&["validate", &fixture("example_6x6")]), 2);
    assert_eq!(status(&["rho", &fixture("ko_10x10"), "--rep", &fixture("ko_pdp_rep")]), 3);
    assert_eq!(status(&["rho", &fixture("ko_10x10")]), 1);
    assert_eq!(status(&["frobnicate"]), 1);
    assert_eq!(status(&["validate", "/no/such/file.json"]), 2);
}

#[test]
fn validate_messages() {
    let (code, out, _) = cli(&["validate", &fixture("ko_10x10")]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "valid ε=-1 boundary-link Seifert matrix, sizes (1,2,2)");
    let (code, _, err) = cli(&["validate", "@example_6x6"]);
    assert_eq!(code, 2);
    assert!(err.contains("entry (1,5) = 0 but entry (5,1) = 1"), "{err}");
    let (code, out, _) = cli(&["validate", "@example_6x6", "--relaxed"]);
    assert_eq!(code, 0);
    assert!(out.contains("1 axiom violation"));
    let (code, out, _) = cli(&["validate", "@trivial"]);
    assert_eq!(code, 0);
    assert!(out.contains("sizes (0)"));
}

#[test]
fn schema_errors_carry_positions() {
    let bad = "{\n  \"epsilon\": -1,\n  \"sizes\": [1],\n  \"matrix\": [[0, 1], [0, \"x\"]]\n}";
    match parse_seifert(bad, false) {
        Err(FormatError::Schema { line, .. }) => assert_eq!(line, 4),
        other => panic!("expected a schema error, got {other:?}"),
    }
    let short = r#"{"epsilon": -1, "sizes": [1], "matrix": [[0, 1], [0]]}"#;
    let msg = parse_seifert(short, false).unwrap_err().to_string();
    assert!(msg.contains("matrix[1]"), "{msg}");
    let rep = r#"{"k": 1, "format": "cyclotomic", "matrices": [[[["1"]]]]}"#;
    assert!(parse_rep(rep).unwrap_err().to_string().contains("order"));
    let not_unitary = r#"{"k": 1, "format": "cyclotomic", "order": 1, "matrices": [[[["2"]]]]}"#;
    assert!(parse_rep(not_unitary).is_err());
}

#[test]
fn representations_round_trip() {
    for name in ["ko_rep", "ko_pdp_rep", "doubled_rep"] {
        let alpha = parse_rep(fixtures::get(name).unwrap()).unwrap();
        let text = serde_json::to_string(&rep_to_file(&alpha)).unwrap();
        assert_eq!(parse_rep(&text).unwrap(), alpha, "{name}");
    }
    let float = parse_rep(fixtures::get("doubled_rep").unwrap()).unwrap().to_float();
    let text = serde_json::to_string(&rep_to_file(&float)).unwrap();
    let back = parse_rep(&text).unwrap();
    assert_eq!(back.mode(), Mode::Float);
    assert_eq!(back.float_matrices(), float.float_matrices());
}

#[test]
fn rho_reports() {
    let (code, out, _) = cli(&["rho", "@ko_10x10", "--rep", "@ko_rep", "--epsilon", "-1", "--mode", "exact", "--out", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], "-2");
    assert_eq!(v["exact"], true);
    assert_eq!(v["singular"], true);
    assert_eq!(v["verdict"], "no_information");
    assert_eq!(code, 0);

    let (code, out, _) = cli(&["rho", "@ko_10x10", "--rep", "@ko_pdp_rep", "--mode", "float", "--out", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mode"], "float");
    assert!((v["value_f64"].as_f64().unwrap() + 2.0).abs() < 1e-9);
    // float tuples are never certified as p-group representations
    assert_eq!(v["verdict"], "not_boundary_slice");
    assert_eq!(code, 3);

    // q = 1 gives eps = -1, q = 0 gives eps = +1, which Ko violates
    assert_eq!(cli(&["rho", "@ko_10x10", "--rep", "@ko_pdp_rep", "--q", "1"]).0, 3);
    let (code, _, err) = cli(&["rho", "@ko_10x10", "--rep", "@ko_pdp_rep", "--q", "0"]);
    assert_eq!(code, 2, "{err}");
    assert_eq!(cli(&["rho", "@ko_10x10", "--rep", "@ko_pdp_rep", "--q", "0", "--epsilon", "-1"]).0, 1);
}

#[test]
fn sigma_and_forms() {
    let (code, out, _) = cli(&["sigma", "@ko_10x10", "--rep", "@ko_pdp_rep", "--out", "csv"]);
    assert_eq!(code, 3);
    assert_eq!(out.lines().nth(1).unwrap(), "sigma,-2,false,not_slice");
    let (code, out, _) = cli(&["sigma-f", "@example_4x4", "--forms", "@example_4x4_forms"]);
    assert_eq!(code, 3);
    assert!(out.starts_with("sigma_f = -2"));
    let (code, _, err) = cli(&["rho", "@example_6x6", "--relaxed", "--rep", "@doubled_rep"]);
    assert_eq!(code, 2);
    assert!(err.contains("hermitian"), "{err}");
    let (code, out, _) = cli(&["rho", "@example_6x6", "--relaxed", "--hermitize", "--rep", "@doubled_rep"]);
    assert_eq!(code, 0);
    assert!(out.contains("relaxed") && out.contains("hermitized"), "{out}");
}

#[test]
fn alexander_output() {
    let (code, out, _) = cli(&["alexander", "@example_6x6", "--relaxed"]);
    assert_eq!(code, 0);
    assert!(out.contains("raw: ") && out.contains("normalized: ") && out.contains("[relaxed]"));
    let (_, out, _) = cli(&["alexander", "@trivial"]);
    assert!(out.contains("raw: 1"));
}

fn pdp_spec(jobs: usize) -> ScanSpec {
    ScanSpec {
        family: Family::PdpEnumeration {
            p: 2,
            k: 2,
            max_order: 4,
            budget: 300,
            seed: 7,
        },
        epsilon: None,
        mode: Mode::Exact,
        opts: EvalOptions::default(),
        jobs,
    }
}

#[test]
fn scans_are_deterministic_and_complete() {
    let a = parse_seifert(fixtures::get("ko_10x10").unwrap(), false).unwrap();
    let one = run_scan(&a, "d", &pdp_spec(1));
    let four = run_scan(&a, "d", &pdp_spec(4));
    assert_eq!(to_csv(&one), to_csv(&four));
    assert_eq!(one.items.len(), 300);
    assert!(one.items.windows(2).all(|w| w[0].index < w[1].index));

    let spec = ScanSpec {
        family: Family::AbelianGrid { n: 5 },
        ..pdp_spec(2)
    };
    let grid = run_scan(&a, "d", &spec);
    let csv = to_csv(&grid);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "index,j1,j2,j3,value,singular,verdict");
    assert_eq!(lines.count(), 125);
    assert_eq!(grid.summary.family_size, 125);

    let (_, a1, _) = cli(&["scan", "@ko_10x10", "--family", "random-unitary", "--budget", "20", "--seed", "3", "--out", "json"]);
    let (_, a2, _) = cli(&["scan", "@ko_10x10", "--family", "random-unitary", "--budget", "20", "--seed", "3", "--out", "json", "--jobs", "3"]);
    assert_eq!(a1, a2);
    assert_eq!(cli(&["scan", "@ko_10x10", "--family", "random-unitary", "--budget", "0"]).0, 1);
}

#[test]
fn scan_certificates_replay() {
    let a = parse_seifert(fixtures::get("ko_10x10").unwrap(), false).unwrap();
    let outcome = run_scan(&a, "d", &pdp_spec(1));
    let item = outcome
        .items
        .iter()
        .find(|it| it.report.as_ref().is_some_and(|r| r.verdict == Verdict::NotSlice))
        .expect("a not_slice certificate in the sample");
    let r = item.report.as_ref().unwrap();
    let alpha = parse_rep(&serde_json::to_string(r.representation.as_ref().unwrap()).unwrap()).unwrap();
    let again = rho(&a, &alpha, None, &EvalOptions::default()).unwrap();
    assert_eq!(again.total.to_string(), r.value);
    assert!(!again.singular);
}

#[test]
fn zero_size_matrix_scans_to_zero() {
    for args in [
        vec!["abelian-scan", "@trivial", "--n", "8", "--out", "json"],
        vec!["scan", "@trivial", "--family", "pdp-enumeration", "--out", "json"],
        vec!["scan", "@trivial", "--family", "random-unitary", "--budget", "5", "--out", "json"],
    ] {
        let (code, out, _) = cli(&args);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        for it in v["items"].as_array().unwrap() {
            assert_eq!(it["report"]["value_f64"], 0.0);
            assert_eq!(it["report"]["verdict"], "no_information");
        }
    }
}

#[test]
fn metabolic_verification() {
    let (code, out, _) = cli(&["metabolic-verify", "@example_4x4", "--trials", "50"]);
    assert_eq!(code, 0);
    assert!(out.contains("no certificate found"), "{out}");
    let dir = std::env::temp_dir().join(format!("etalink-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = parse_seifert(fixtures::get("ko_10x10").unwrap(), false).unwrap();
    let (d, cert) = etalink::seifert::doubled_certificate(&a);
    let seifert_path = dir.join("doubled.json");
    let cert_path = dir.join("cert.json");
    std::fs::write(&seifert_path, serde_json::to_string(&etalink_cli::formats::SeifertFile::from_matrix(&d)).unwrap()).unwrap();
    std::fs::write(&cert_path, serde_json::to_string(&etalink_cli::formats::CertificateFile::from_certificate(&cert)).unwrap()).unwrap();
    let (code, out, _) = cli(&["metabolic-verify", seifert_path.to_str().unwrap(), "--cert", cert_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("metabolizer verified"), "{out}");
    std::fs::remove_dir_all(&dir).ok();
}
