//! End-to-end checks of the command-line binary: subcommand output, exit
//! codes, determinism under a fixed seed, and grid emission.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_henon-roots"))
}

#[test]
fn root_orders_reports_the_admissible_set() {
    let out = bin()
        .args(["root-orders", "henon(p=w^2, a=1)^2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degree: 4"));
    assert!(text.contains("admissible orders: 2"));
}

#[test]
fn root_orders_empty_for_degree_six() {
    let out = bin()
        .args(["root-orders", "henon(p=w^2, a=1) o henon(p=w^3, a=1)"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degree: 6"));
    assert!(text.contains("admissible orders: none"));
}

#[test]
fn verify_root_exit_codes() {
    let ok = bin()
        .args([
            "verify-root",
            "henon(p=w^2, a=-1)^2",
            "--root",
            "(w, z + w^2)",
            "--order",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));

    let refuted = bin()
        .args([
            "verify-root",
            "henon(p=w^2, a=-1)^2",
            "--root",
            "(w, z + w^3)",
            "--order",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(refuted.status.code(), Some(2));

    let diagnostic = bin()
        .args([
            "verify-root",
            "henon(p=2*w^2, a=1)",
            "--root",
            "tau",
            "--order",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(diagnostic.status.code(), Some(1));
}

#[test]
fn find_roots_is_deterministic_under_seed() {
    let run = || {
        let out = bin()
            .args([
                "find-roots",
                "henon(p=w^2, a=-1)^2",
                "--order",
                "2",
                "--starts",
                "40",
                "--seed",
                "7",
                "--format",
                "json",
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(first, second);
    let parsed: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(parsed["roots"].as_array().unwrap().len(), 3);
}

#[test]
fn green_value_matches_the_log() {
    let out = bin()
        .args([
            "green",
            "henon(p=w^2, a=1)",
            "--point",
            "0,1e6",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let value = parsed["value"].as_f64().unwrap();
    assert!((value - (1e6f64).ln()).abs() < 0.01);
    assert_eq!(parsed["classification"], "escaped");
}

#[test]
fn escape_grid_writes_pgm_and_csv() {
    let dir = std::env::temp_dir();
    let pgm_path = dir.join("henon_roots_cli_test.pgm");
    let out = bin()
        .args([
            "escape-grid",
            "henon(p=w^2, a=1)",
            "--what",
            "kplus-mask",
            "--resolution",
            "9x9",
            "--half-width",
            "2.5",
            "--format",
            "pgm",
            "--out",
        ])
        .arg(&pgm_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let data = std::fs::read(&pgm_path).unwrap();
    assert!(data.starts_with(b"P5\n"));
    std::fs::remove_file(&pgm_path).ok();

    let csv = bin()
        .args([
            "escape-grid",
            "henon(p=w^2, a=1)",
            "--what",
            "kplus-mask",
            "--resolution",
            "3x3",
            "--half-width",
            "2.5",
            "--format",
            "csv",
        ])
        .output()
        .unwrap();
    assert!(csv.status.success());
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn conjugate_rejects_second_coordinate_translation() {
    let out = bin()
        .args([
            "conjugate",
            "elem_nonflow(r=2, mu=1, q=t^2 + 1, beta=-1)",
            "--phi",
            "(-z - 1/3*w^5 - 1/3*w, -w + 1)",
            "--order",
            "3",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("b(a^n - 1)/(a - 1) = 0"), "got: {err}");
}

#[test]
fn symmetry_roots_reports_the_family_as_json() {
    let out = bin()
        .args([
            "symmetry-roots",
            "henon(p=w^2, a=-1)^2",
            "--root",
            "(w, z + w^2)",
            "--order",
            "2",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let roots = parsed["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 3);
    for r in roots {
        assert_eq!(r["status"], "verified-exact");
        assert!(r["twist"]["sigma"].is_string());
    }
}

#[test]
fn parse_errors_carry_positions() {
    let out = bin()
        .args(["eval", "(w, q^2)", "--point", "0,0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 1"));
    assert!(err.contains("column 5"));
}
