use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fock_cli::{MeasureKind, MeasureSpecFile};
use fock_core::Measure;
use num_complex::Complex64;

fn measures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("measures")
}

fn shipped(name: &str) -> String {
    measures_dir().join(name).to_string_lossy().into_owned()
}

fn fock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fock")).args(args).output().unwrap()
}

fn run(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fock").chain(args.iter().copied());
    let code = fock_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn shipped_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(measures_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

fn same_measure(a: &Measure, b: &Measure) {
    assert_eq!(a.describe(), b.describe());
    assert_eq!(a.atoms(), b.atoms());
    for k in 0..40 {
        let z = Complex64::from_polar(0.1 * k as f64, 0.7 * k as f64);
        assert_eq!(a.density_at(z), b.density_at(z));
    }
}

#[test]
fn shipped_files_round_trip() {
    let files = shipped_files();
    assert!(files.len() >= 6);
    for path in files {
        let file = MeasureSpecFile::load(&path).unwrap();
        let again = MeasureSpecFile::from_json(&file.to_json()).unwrap();
        assert_eq!(file, again, "{}", path.display());
        same_measure(&file.to_measure().unwrap(), &again.to_measure().unwrap());
    }
}

#[test]
fn dirac_file_has_mass_pi() {
    let file = MeasureSpecFile::load(Path::new(&shipped("dirac0.json"))).unwrap();
    match &file.measure {
        MeasureKind::Atomic { atoms } => {
            assert_eq!(atoms.len(), 1);
            assert_eq!(atoms[0].mass, std::f64::consts::PI / file.alpha);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn csv_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, Vec<&str>); 3] = [
        ("berezin", vec!["berezin", "--t", "1", "--radius", "2", "--spacing", "0.5"]),
        ("ballmap", vec!["ballmap", "--delta", "0.75", "--radius", "2", "--spacing", "0.5"]),
        ("toeplitz", vec!["toeplitz", "--matrix", "4"]),
    ];
    for file in ["three_atoms.json", "density_grid.json", "radial_bump.json"] {
        for (name, args) in &cases {
            let mut outputs = Vec::new();
            for k in 0..2 {
                let target = dir.path().join(format!("{name}-{k}.csv"));
                let mut argv = args.clone();
                let m = shipped(file);
                let t = target.to_string_lossy().into_owned();
                argv.insert(1, &m);
                argv.extend(["--out", &t]);
                let (code, _, err) = run(&argv);
                assert_eq!(code, 0, "{file} {name}: {err}");
                outputs.push(std::fs::read(&target).unwrap());
            }
            assert_eq!(outputs[0], outputs[1], "{file} {name}");
        }
    }
}

#[test]
fn csv_headers_are_fixed() {
    let dirac = shipped("dirac0.json");
    let cases: [(Vec<&str>, &str); 5] = [
        (vec!["berezin", &dirac, "--radius", "1", "--spacing", "1"], "re,im,berezin"),
        (vec!["ballmap", &dirac, "--radius", "1", "--spacing", "1"], "re,im,ball_measure"),
        (vec!["norms", &dirac, "--function", "z", "--p", "2"], "p,norm,growth"),
        (vec!["toeplitz", &dirac, "--matrix", "1"], "row,col,re,im"),
        (
            vec!["toeplitz", &dirac, "--bound", "--radius", "2"],
            "upper_proxy,lower_proxy,growth,verdict,normalization",
        ),
    ];
    for (args, header) in cases {
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(out.lines().any(|l| l == header), "{args:?}: {out}");
    }
}

#[test]
fn lebesgue_is_not_infinity_two_carleson() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("report.csv");
    let out = fock(&[
        "carleson",
        &shipped("lebesgue.json"),
        "--regime",
        "infq",
        "--q",
        "2",
        "--out",
        csv.to_str().unwrap(),
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(2), "{text}");
    assert!(text.contains("not (∞,2)-Carleson"), "{text}");
    let written = std::fs::read_to_string(csv).unwrap();
    assert!(written.starts_with("regime,test,value,verdict,equivalent,note\n"));
    assert!(written.contains(",embedding,"));
}

#[test]
fn dirac_matrix_is_first_basis_projection() {
    let out = fock(&["toeplitz", &shipped("dirac0.json"), "--matrix", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("row,col,re,im"));
    let mut seen = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let (r, c): (usize, usize) = (f[0].parse().unwrap(), f[1].parse().unwrap());
        let (re, im): (f64, f64) = (f[2].parse().unwrap(), f[3].parse().unwrap());
        let expected = if r == 0 && c == 0 { 1.0 } else { 0.0 };
        assert!((re - expected).abs() < 1e-12 && im.abs() < 1e-12, "{line}");
        seen += 1;
    }
    assert_eq!(seen, 9);
}

#[test]
fn atomic_norms_match_finite_sums() {
    // three_atoms.json: (1, 0) mass 1, (-0.5, 1.5) mass 0.5, (0, -2) mass 2
    let atoms = [((1.0, 0.0), 1.0), ((-0.5, 1.5), 0.5), ((0.0, -2.0), 2.0)];
    let term = |(x, y): (f64, f64)| {
        let r2: f64 = x * x + y * y;
        r2.sqrt() * (-r2 / 2.0).exp()
    };
    let lp = |p: f64| atoms.iter().map(|&(a, m)| m * term(a).powf(p)).sum::<f64>().powf(1.0 / p);
    let sup = atoms.iter().map(|&(a, _)| term(a)).fold(0.0, f64::max);
    let (code, out, err) = run(&["norms", &shipped("three_atoms.json"), "--function", "z", "--p", "1,2,inf"]);
    assert_eq!(code, 0, "{err}");
    let rows: Vec<Vec<String>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    let expected = [("1", lp(1.0)), ("2", lp(2.0)), ("inf", sup)];
    for (row, (p, v)) in rows.iter().zip(expected) {
        assert_eq!(row[0], p);
        assert!((row[1].parse::<f64>().unwrap() - v).abs() < 1e-12, "{row:?} vs {v}");
        assert_eq!(row[2], "converging");
    }
}

#[test]
fn gaussian_bound_matches_closed_forms() {
    // (α/π)·π·α/(β + αt/2) at the origin, α = β = 1
    let (code, out, err) = run(&["toeplitz", &shipped("gaussian.json"), "--bound"]);
    assert_eq!(code, 0, "{err}");
    let row: Vec<&str> = out.lines().last().unwrap().split(',').collect();
    assert!((row[0].parse::<f64>().unwrap() - 2.0 / 3.0).abs() < 1e-9);
    assert!((row[1].parse::<f64>().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(row[3], "holds");
}

#[test]
fn lebesgue_is_not_compact() {
    let (code, out, _) = run(&["toeplitz", &shipped("lebesgue.json"), "--compact"]);
    assert_eq!(code, 2);
    assert!(out.contains("compact: fails"), "{out}");
}

#[test]
fn verify_passes_every_criterion() {
    let out = fock(&["verify"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 10, "{text}");
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn invalid_input_exits_with_one_and_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"type":"gaussian","alpha":1,"beta":-2,"scale":1}"#, "beta"),
        (r#"{"type":"lebesgue","alpha":-1,"scale":1}"#, "alpha"),
        (r#"{"type":"gaussian","alpha":1,"scale":1}"#, "beta"),
        (r#"{"type":"atomic","alpha":1,"atoms":[{"re":0,"im":0,"mass":-1}]}"#, "atoms[0].mass"),
        (r#"{"type":"lebesgue","alpha":1,"scale":1e999}"#, "line 1 column"),
    ];
    for (k, (text, field)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("bad{k}.json"));
        std::fs::write(&path, text).unwrap();
        let (code, _, err) = run(&["toeplitz", path.to_str().unwrap(), "--matrix", "2"]);
        assert_eq!(code, 1, "{text}");
        assert!(err.contains(field), "{text}: {err}");
    }
    let (code, _, err) = run(&["carleson", &shipped("dirac0.json"), "--regime", "infq"]);
    assert_eq!(code, 1);
    assert!(err.contains("`q`"), "{err}");
    let (code, _, err) = run(&["norms", &shipped("dirac0.json"), "--function", "sin:1", "--p", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("function"), "{err}");
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["norms", &shipped("dirac0.json"), "--function", "z", "--p", "0.5"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}
