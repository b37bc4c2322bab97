use std::path::Path;
use std::process::{Command, Output};

use gaw::manifest::{manifest_path_for, sha256_hex};
use gaw::GenerationManifest;

fn gaw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaw"))
        .args(args)
        .env_remove("GAW_DEFAULT_SEED")
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn ncorner_twice_is_identical_and_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    assert!(gaw(&["gen", "nees-ncorner", "--n", "23", "--seed", "7", "-o", s(&a)])
        .status
        .success());
    assert!(gaw(&["gen", "nees-ncorner", "--n", "23", "--seed", "7", "-o", s(&b)])
        .status
        .success());
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    // 23 vertices plus the closing repeat.
    let text = String::from_utf8(bytes.clone()).unwrap();
    let pts = text.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
    assert_eq!(pts.split_whitespace().count(), 24);

    let m = GenerationManifest::read(&manifest_path_for(&a)).unwrap();
    assert_eq!(m.rule_id, "gen.nees-ncorner");
    assert_eq!(m.seed, 7);
    assert_eq!(m.params["n"], 23);
    assert_eq!(m.outputs[0].sha256, sha256_hex(&bytes));
}

#[test]
fn measure_uniform_grid() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.csv");
    std::fs::write(&grid, "0,0,0,0\n0,0,0,0\n0,0,0,0\n0,0,0,0\n").unwrap();
    let out = gaw(&["measure", "--input", s(&grid)]);
    assert!(out.status.success());
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.starts_with("metric,value\n"));
    assert!(report.contains("\nentropy_bits,0\n"), "{report}");
    assert!(report.contains("\nredundancy,1\n"), "{report}");

    let file = dir.path().join("report.csv");
    assert!(gaw(&["measure", "--input", s(&grid), "--block", "2x2", "-o", s(&file)])
        .status
        .success());
    let written = std::fs::read_to_string(&file).unwrap();
    assert!(written.contains("block_entropy_2x2_bits,0\n"));
    assert!(!written.contains("1x1"));
    assert!(manifest_path_for(&file).exists());
}

#[test]
fn measure_pgm_raster() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("img.pgm");
    std::fs::write(&img, "P2\n2 2\n255\n0 255\n255 0\n").unwrap();
    let out = gaw(&["measure", "--input", s(&img), "--levels", "2"]);
    assert!(out.status.success());
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.contains("symbols,2\n"));
    assert!(report.contains("entropy_bits,1\n"), "{report}");
    assert!(report.contains("redundancy,0\n"), "{report}");
}

#[test]
fn wave_hs_single_bin() {
    let dir = tempfile::tempdir().unwrap();
    let sp = dir.path().join("single_bin.csv");
    std::fs::write(
        &sp,
        "f_hz,df_hz,theta_rad,dtheta_rad,s_m2_per_hz_rad\n0.1,0.1,0,0.1,2.0\n",
    )
    .unwrap();
    let out = gaw(&["wave", "hs", "--spectrum", s(&sp)]);
    assert!(out.status.success());
    let hs: f64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    assert!((hs - 0.5657).abs() < 1e-3, "{hs}");
}

#[test]
fn wave_synth_with_graymap_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let sp = dir.path().join("s.csv");
    std::fs::write(
        &sp,
        "f_hz,df_hz,theta_rad,dtheta_rad,s_m2_per_hz_rad\n0.1,0.05,0,0.5,1\n0.1,0.05,1,0.5,2\n",
    )
    .unwrap();
    let csv = dir.path().join("field.csv");
    let pgm = dir.path().join("field.pgm");
    let out = gaw(&[
        "wave",
        "synth",
        "--spectrum",
        s(&sp),
        "--nx",
        "32",
        "--ny",
        "16",
        "--dx",
        "4",
        "--dy",
        "4",
        "--seed",
        "3",
        "-o",
        s(&csv),
        "--pgm",
        s(&pgm),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 16);
    assert!(text.lines().all(|l| l.split(',').count() == 32));
    let heights: Vec<f64> = text
        .lines()
        .flat_map(|l| l.split(','))
        .map(|v| v.parse().unwrap())
        .collect();

    let m = GenerationManifest::read(&manifest_path_for(&csv)).unwrap();
    assert_eq!(m.outputs.len(), 2);
    assert_eq!(m.inputs[0].sha256, sha256_hex(&std::fs::read(&sp).unwrap()));
    let lo = m.info["height_min_m"].as_f64().unwrap();
    let hi = m.info["height_max_m"].as_f64().unwrap();
    assert_eq!(lo, heights.iter().copied().fold(f64::INFINITY, f64::min));
    assert_eq!(hi, heights.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    let img = gaw::raster::parse_pgm(&std::fs::read(&pgm).unwrap()).unwrap();
    assert_eq!((img.width, img.height), (32, 16));
    assert!(img.pixels.contains(&0) && img.pixels.contains(&255));
}

#[test]
fn heatmap_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let sp = dir.path().join("s.csv");
    std::fs::write(
        &sp,
        "f_hz,df_hz,theta_rad,dtheta_rad,s_m2_per_hz_rad\n0.1,0.05,0,0.5,1\n0.1,0.05,1,0.5,2\n",
    )
    .unwrap();
    let out = dir.path().join("spec.pgm");
    assert!(gaw(&["wave", "heatmap", "--spectrum", s(&sp), "-o", s(&out)])
        .status
        .success());
    let original = std::fs::read(&out).unwrap();
    std::fs::remove_file(&out).unwrap();
    let r = gaw(&["replay", s(&manifest_path_for(&out))]);
    assert!(r.status.success());
    assert_eq!(std::fs::read(&out).unwrap(), original);
}

#[test]
fn tampered_seed_is_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("h.svg");
    assert!(gaw(&["gen", "hommage", "--seed", "5", "-o", s(&svg)]).status.success());
    let mpath = manifest_path_for(&svg);
    let mut m = GenerationManifest::read(&mpath).unwrap();
    m.seed = 6;
    std::fs::write(&mpath, m.to_json()).unwrap();
    let replayed = dir.path().join("replayed");
    std::fs::create_dir(&replayed).unwrap();
    let out = gaw(&["replay", s(&mpath), "--out-dir", s(&replayed)]);
    assert_eq!(out.status.code(), Some(gaw::cli::EXIT_CHECKSUM_MISMATCH));
    assert!(String::from_utf8_lossy(&out.stderr).contains("checksum mismatch"));
    assert_ne!(
        std::fs::read(&svg).unwrap(),
        std::fs::read(replayed.join("h.svg")).unwrap()
    );
}

#[test]
fn version_mismatch_refuses() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("n.svg");
    assert!(gaw(&["gen", "nees-ncorner", "-o", s(&svg)]).status.success());
    let mpath = manifest_path_for(&svg);
    let mut m = GenerationManifest::read(&mpath).unwrap();
    m.engine_version = "gaw 0.0.1".into();
    std::fs::write(&mpath, m.to_json()).unwrap();
    std::fs::remove_file(&svg).unwrap();
    let out = gaw(&["replay", s(&mpath)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("refusing to replay"));
    assert!(!svg.exists());
}

#[test]
fn changed_input_warns_on_replay() {
    let dir = tempfile::tempdir().unwrap();
    let lex = dir.path().join("lex.txt");
    let tpl = dir.path().join("tpl.txt");
    std::fs::write(&lex, "[subjects]\nA\nB\n[predicates]\nX\nY\n").unwrap();
    std::fs::write(&tpl, "{S} IS {P}\n").unwrap();
    let txt = dir.path().join("poem.txt");
    let out = gaw(&[
        "gen",
        "lutz",
        "--lexicon",
        s(&lex),
        "--templates",
        s(&tpl),
        "--n",
        "5",
        "--seed",
        "2",
        "-o",
        s(&txt),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&txt).unwrap();
    assert_eq!(body.lines().count(), 5);
    let re_line = |l: &str| {
        let (subj, pred) = l.split_once(" IS ").unwrap();
        ["A", "B"].contains(&subj) && ["X", "Y"].contains(&pred)
    };
    assert!(body.lines().all(re_line));

    std::fs::write(&lex, "[subjects]\nC\nD\n[predicates]\nX\nY\n").unwrap();
    let out = gaw(&["replay", s(&manifest_path_for(&txt))]);
    assert_eq!(out.status.code(), Some(gaw::cli::EXIT_CHECKSUM_MISMATCH));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("changed since the manifest"), "{err}");
}

#[test]
fn default_seed_comes_from_environment_or_zero() {
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.svg");
    let implicit = dir.path().join("implicit.svg");
    let env = dir.path().join("env.svg");
    let env_explicit = dir.path().join("env_explicit.svg");
    assert!(gaw(&["gen", "nees-ncorner", "--seed", "0", "-o", s(&zero)])
        .status
        .success());
    assert!(gaw(&["gen", "nees-ncorner", "-o", s(&implicit)]).status.success());
    assert_eq!(std::fs::read(&zero).unwrap(), std::fs::read(&implicit).unwrap());

    let status = Command::new(env!("CARGO_BIN_EXE_gaw"))
        .args(["gen", "nees-ncorner", "-o", s(&env)])
        .env("GAW_DEFAULT_SEED", "99")
        .status()
        .unwrap();
    assert!(status.success());
    assert!(gaw(&["gen", "nees-ncorner", "--seed", "99", "-o", s(&env_explicit)])
        .status
        .success());
    assert_eq!(std::fs::read(&env).unwrap(), std::fs::read(&env_explicit).unwrap());
    assert_eq!(GenerationManifest::read(&manifest_path_for(&env)).unwrap().seed, 99);

    let bad = Command::new(env!("CARGO_BIN_EXE_gaw"))
        .args(["gen", "nees-ncorner", "-o", s(&env)])
        .env("GAW_DEFAULT_SEED", "soon")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn errors_are_one_line_and_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.svg");
    let cases: Vec<Vec<&str>> = vec![
        vec!["gen", "nees-ncorner", "--n", "2", "-o", s(&out_path)],
        vec!["gen", "nees-grid", "--cell-rule", "spiral", "-o", s(&out_path)],
        vec!["gen", "density", "--orientations", "diagonal", "-o", s(&out_path)],
        vec!["gen", "hommage", "--jitter", "0.5", "-o", s(&out_path)],
        vec!["gen", "hommage", "--cell-states", "empty=0.4", "-o", s(&out_path)],
        vec!["measure", "--input", "/nonexistent/grid.csv"],
        vec!["wave", "hs", "--spectrum", "/nonexistent/s.csv"],
    ];
    for args in cases {
        let out = gaw(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "));
    }
    assert!(!out_path.exists());

    let unknown = gaw(&["paint"]);
    assert_eq!(unknown.status.code(), Some(2));
    let bad_flag = gaw(&["gen", "nees-ncorner", "--n", "many", "-o", s(&out_path)]);
    assert_eq!(bad_flag.status.code(), Some(2));
}

#[test]
fn bad_spectrum_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let sp = dir.path().join("bad.csv");
    std::fs::write(
        &sp,
        "f_hz,df_hz,theta_rad,dtheta_rad,s_m2_per_hz_rad\n0.1,0.1,0,0.1,-1\n",
    )
    .unwrap();
    let out = gaw(&["wave", "hs", "--spectrum", s(&sp)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2") && err.contains("s_m2_per_hz_rad"), "{err}");

    std::fs::write(&sp, "").unwrap();
    assert_eq!(gaw(&["wave", "hs", "--spectrum", s(&sp)]).status.code(), Some(1));
}

#[test]
fn lutz_to_stdout() {
    let out = gaw(&["gen", "lutz", "--n", "4", "--seed", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert_eq!(
        text,
        String::from_utf8(gaw(&["gen", "lutz", "--n", "4", "--seed", "1"]).stdout).unwrap()
    );
}
