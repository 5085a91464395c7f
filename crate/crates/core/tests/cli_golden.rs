mod common;

use std::process::Command;

use common::{fixture, golden_cases, golden_path, run_cli};

fn args(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

#[test]
fn golden_outputs_match() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, argv) in golden_cases() {
        let (code, out, err) = run_cli(&argv);
        assert_eq!(code, 0, "{name}: {}", String::from_utf8_lossy(&err));
        let (_, again, _) = run_cli(&argv);
        assert_eq!(out, again, "{name}: output differs between runs");
        let path = golden_path(name);
        if update {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &out).unwrap();
        } else {
            let expected =
                std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(
                String::from_utf8_lossy(&out),
                String::from_utf8_lossy(&expected),
                "{name}: output differs from {}",
                path.display()
            );
        }
    }
}

#[test]
fn dist_prints_log_two_and_log_four() {
    let (code, out, _) = run_cli(&args(&[
        "dist",
        "--cone",
        &fixture("orthant3.toml"),
        &fixture("o3_a.toml"),
        &fixture("o3_b.toml"),
    ]));
    assert_eq!(code, 0);
    let expected = format!("{:.12}\n{:.12}\n", 2f64.ln(), 4f64.ln());
    assert_eq!(String::from_utf8(out).unwrap(), expected);
}

#[test]
fn unique_spectral_line() {
    let (code, out, _) = run_cli(&args(&[
        "unique",
        "--cone",
        &fixture("psd2.toml"),
        &fixture("psd2_id.toml"),
        &fixture("psd2_diag.toml"),
    ]));
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "unique spectral {0.5,2}\n");
}

#[test]
fn witness_is_followed_by_check_line() {
    let (code, out, _) = run_cli(&args(&[
        "unique",
        "--cone",
        &fixture("orthant3.toml"),
        &fixture("o3_one.toml"),
        &fixture("o3_flat.toml"),
    ]));
    assert_eq!(code, 0);
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("non_unique face_span"));
    assert_eq!(lines[1], "witness");
    let check = lines[3]
        .strip_prefix("check: d(x,w)+d(w,y)-d(x,y) = ")
        .unwrap();
    assert!(check.parse::<f64>().unwrap().abs() <= 1e-9);
}

#[test]
fn unknown_flag_is_a_usage_error_with_empty_stdout() {
    let out = Command::new(env!("CARGO_BIN_EXE_conemetric"))
        .args(["dist", "--bogus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn binary_matches_in_process_run() {
    let argv = args(&[
        "dist",
        "--cone",
        &fixture("square.toml"),
        &fixture("square_x.toml"),
        &fixture("square_y.toml"),
    ]);
    let out = Command::new(env!("CARGO_BIN_EXE_conemetric"))
        .args(&argv)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, run_cli(&argv).1);
}

#[test]
fn exit_codes() {
    let bad_dim = run_cli(&args(&[
        "dist",
        "--cone",
        &fixture("orthant3.toml"),
        &fixture("o3_a.toml"),
        &fixture("bad_dim.toml"),
    ]));
    assert_eq!(bad_dim.0, 2);
    assert!(bad_dim.1.is_empty());
    let boundary = run_cli(&args(&[
        "embed",
        "--cone",
        &fixture("orthant3.toml"),
        &fixture("o3_boundary.toml"),
    ]));
    assert_eq!(boundary.0, 2);
    let missing = run_cli(&args(&[
        "embed",
        "--cone",
        &fixture("nope.toml"),
        &fixture("o3_a.toml"),
    ]));
    assert_eq!(missing.0, 2);
    let wrong_cone = run_cli(&args(&[
        "embed",
        "--cone",
        &fixture("o3_a.toml"),
        &fixture("o3_a.toml"),
    ]));
    assert_eq!(wrong_cone.0, 2);
    let precision = run_cli(&args(&["dist", "--precision", "5"]));
    assert_eq!(precision.0, 1);
    // f64 cannot resolve Lorentz points this close to the boundary
    let too_far = run_cli(&args(&[
        "gromov",
        "--kmax",
        "60",
        "--cone",
        &fixture("lorentz3.toml"),
        "--base",
        &fixture("lorentz_apex.toml"),
        &fixture("lorentz_dirs.toml"),
    ]));
    assert_eq!(too_far.0, 3, "{}", String::from_utf8_lossy(&too_far.2));
    assert!(too_far.1.is_empty());
    let help = run_cli(&args(&["--help"]));
    assert_eq!(help.0, 0);
    assert!(!help.1.is_empty());
}
