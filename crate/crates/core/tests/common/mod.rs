#![allow(dead_code)]

use std::path::PathBuf;

pub fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

pub fn golden_path(name: &str) -> PathBuf {
    [
        env!("CARGO_MANIFEST_DIR"),
        "tests",
        "golden",
        &format!("{name}.out"),
    ]
    .iter()
    .collect()
}

/// Runs the CLI in-process; returns exit code, stdout and stderr.
pub fn run_cli(args: &[String]) -> (i32, Vec<u8>, Vec<u8>) {
    let mut argv = vec!["conemetric".to_string()];
    argv.extend(args.iter().cloned());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = conemetric::cli::run(argv, &mut out, &mut err);
    (code, out, err)
}

/// Golden cases: name and arguments. Entries starting with `@` are fixture files.
pub fn golden_cases() -> Vec<(&'static str, Vec<String>)> {
    let raw: Vec<(&str, Vec<&str>)> = vec![
        (
            "dist_orthant",
            vec![
                "dist",
                "--cone",
                "@orthant3.toml",
                "@o3_a.toml",
                "@o3_b.toml",
            ],
        ),
        (
            "dist_psd",
            vec![
                "dist",
                "--cone",
                "@psd3.toml",
                "@psd3_id.toml",
                "@psd3_diag.toml",
            ],
        ),
        (
            "dist_square",
            vec![
                "dist",
                "--precision",
                "17",
                "--cone",
                "@square.toml",
                "@square_x.toml",
                "@square_y.toml",
            ],
        ),
        (
            "geodesic_orthant",
            vec![
                "geodesic",
                "--samples",
                "8",
                "--cone",
                "@orthant3.toml",
                "@o3_a.toml",
                "@o3_b.toml",
            ],
        ),
        (
            "geodesic_lorentz",
            vec![
                "geodesic",
                "--samples",
                "6",
                "--cone",
                "@lorentz3.toml",
                "@lorentz_x.toml",
                "@lorentz_y.toml",
            ],
        ),
        (
            "geodesic_psd_ray_first",
            vec![
                "geodesic",
                "--samples",
                "4",
                "--ray-first",
                "--cone",
                "@psd2.toml",
                "@psd2_id.toml",
                "@psd2_unbalanced.toml",
            ],
        ),
        (
            "unique_psd2",
            vec![
                "unique",
                "--cone",
                "@psd2.toml",
                "@psd2_id.toml",
                "@psd2_diag.toml",
            ],
        ),
        (
            "unique_psd3",
            vec![
                "unique",
                "--cone",
                "@psd3.toml",
                "@psd3_id.toml",
                "@psd3_diag.toml",
            ],
        ),
        (
            "unique_orthant_flat",
            vec![
                "unique",
                "--cone",
                "@orthant3.toml",
                "@o3_one.toml",
                "@o3_flat.toml",
            ],
        ),
        (
            "unique_orthant_corner",
            vec![
                "unique",
                "--cone",
                "@orthant3.toml",
                "@o3_one.toml",
                "@o3_corner.toml",
            ],
        ),
        (
            "unique_square",
            vec![
                "unique",
                "--cone",
                "@square.toml",
                "@square_x.toml",
                "@square_y.toml",
            ],
        ),
        (
            "unique_hilbert_psd3",
            vec![
                "unique",
                "--hilbert",
                "--cone",
                "@psd3.toml",
                "@psd3_id.toml",
                "@psd3_diag.toml",
            ],
        ),
        (
            "embed_square",
            vec!["embed", "--cone", "@square.toml", "@square_x.toml"],
        ),
        (
            "gromov_lorentz",
            vec![
                "gromov",
                "--precision",
                "8",
                "--eta",
                "2",
                "--kmax",
                "12",
                "--cone",
                "@lorentz3.toml",
                "--base",
                "@lorentz_apex.toml",
                "@lorentz_dirs.toml",
            ],
        ),
        (
            "isometry_partial",
            vec![
                "isometry",
                "--samples",
                "200",
                "--cone",
                "@orthant3.toml",
                "--map",
                "@map_partial.toml",
            ],
        ),
        (
            "isometry_inversion",
            vec![
                "isometry",
                "--samples",
                "200",
                "--seed",
                "7",
                "--cone",
                "@psd2.toml",
                "--map",
                "@map_inversion.toml",
            ],
        ),
        (
            "isometry_congruence",
            vec![
                "isometry",
                "--samples",
                "200",
                "--cone",
                "@psd2.toml",
                "--map",
                "@map_congruence.toml",
            ],
        ),
        (
            "isometry_boost",
            vec![
                "isometry",
                "--samples",
                "200",
                "--cone",
                "@lorentz3.toml",
                "--map",
                "@map_boost.toml",
            ],
        ),
        (
            "isometry_composite",
            vec![
                "isometry",
                "--samples",
                "300",
                "--cone",
                "@orthant3.toml",
                "--map",
                "@map_composite.toml",
            ],
        ),
    ];
    raw.into_iter()
        .map(|(name, args)| {
            let args = args
                .into_iter()
                .map(|a| match a.strip_prefix('@') {
                    Some(f) => fixture(f),
                    None => a.to_string(),
                })
                .collect();
            (name, args)
        })
        .collect()
}
