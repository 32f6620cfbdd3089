use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use fracbessel::basis::BesselBasis;
use fracbessel::cli::{
    convergence_sweep, main_with_args, read_coefficients, run, Args, ProblemKind, AMPLIFICATION_FILE,
    CONVERGENCE_FILE, REPORT_FILE,
};
use fracbessel::inverse::{amplification_profile, Problem};
use fracbessel::specfun::FracOrder;
use clap::Parser;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fracbessel"))
}

fn status(args: &[&str]) -> i32 {
    bin().args(args).output().unwrap().status.code().unwrap()
}

fn cli(args: &[&str]) -> i32 {
    main_with_args(std::iter::once("fracbessel").chain(args.iter().copied()))
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn report(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(dir.join(REPORT_FILE)).unwrap()).unwrap()
}

fn read_csv(path: &Path) -> Vec<Vec<f64>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records()
        .map(|rec| rec.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn invert_initial_after_forward_roundtrip() {
    let tmp = tempfile::tempdir().unwrap();
    let common = ["--alpha", "0.5", "--T", "1", "--K", "40"];
    let fwd = p(tmp.path(), "fwd");
    let mut a: Vec<&str> = common.to_vec();
    a.extend(["--problem", "forward", "--func", "poly43", "--out-dir", &fwd]);
    assert_eq!(cli(&a), 0);
    let f = p(tmp.path(), "fwd/coefficients.json");
    let inv = p(tmp.path(), "inv");
    let mut a: Vec<&str> = common.to_vec();
    a.extend(["--problem", "invert-initial", "--in-f", &f, "--in-g", "func:poly43", "--out-dir", &inv]);
    assert_eq!(cli(&a), 0);
    let r = report(Path::new(&inv));
    assert!(r["residual"].as_f64().unwrap() <= 1e-8);
    assert!(r["reference_error"].as_f64().unwrap() <= 1e-6);
    assert_eq!(r["K"], 40);
    assert_eq!(r["Q"], 160);
    assert_eq!(r["config"]["problem"], "invert-initial");
    assert!(r["config"].get("out_dir").is_none());
}

#[test]
fn diagnostics_rows_match_profile() {
    let tmp = tempfile::tempdir().unwrap();
    let out = p(tmp.path(), "d");
    assert_eq!(cli(&["--problem", "diagnostics", "--alpha", "0.5", "--T", "1", "--K", "20", "--out-dir", &out]), 0);
    let rows = read_csv(&Path::new(&out).join(AMPLIFICATION_FILE));
    let basis = BesselBasis::new(20).unwrap();
    let frac = FracOrder::new(0.5, 1.0).unwrap();
    let init = amplification_profile(frac, &basis, Problem::Initial).unwrap();
    let src = amplification_profile(frac, &basis, Problem::Source).unwrap();
    assert_eq!(rows.len(), 20);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[0] as usize, i + 1);
        assert!((row[2] - init[i]).abs() <= 1e-12 * init[i]);
        assert!((row[3] - src[i]).abs() <= 1e-12 * src[i]);
    }
}

fn sweep(func: &str) -> Vec<(usize, f64, f64, f64)> {
    let args = Args::parse_from([
        "fracbessel", "--problem", "diagnostics", "--alpha", "0.5", "--T", "1", "--K", "10",
        "--func", func, "--sweep-k", "10,20,40,80",
    ]);
    let config = args.to_config().unwrap();
    let (_, rows) = convergence_sweep(&config, &[10, 20, 40, 80]).unwrap();
    rows.iter().map(|r| (r.k, r.delta_u, r.delta_unknown, r.delta_uxx)).collect()
}

#[test]
fn sweep_decreases_for_smooth_data() {
    let rows = sweep("poly43");
    assert_eq!(rows.iter().map(|r| r.0).collect::<Vec<_>>(), [20, 40, 80]);
    for w in rows.windows(2) {
        assert!(w[1].1 < w[0].1 && w[1].2 < w[0].2 && w[1].3 < w[0].3, "{rows:?}");
    }
}

#[test]
fn sweep_of_single_mode_stops_changing() {
    let rows = sweep("mode:3");
    for r in &rows {
        assert_eq!((r.1, r.2, r.3), (0.0, 0.0, 0.0));
    }
}

#[test]
fn sweep_for_weaker_hypotheses() {
    let rows = sweep("poly21");
    for w in rows.windows(2) {
        assert!(w[1].2 < w[0].2);
    }
    // the s = 1 bound |c_k| ≤ M λ_k^{−3/2} only promises tails shrinking like
    // K^{−1/2}; the smoother poly43 must converge visibly faster
    let slope = |r: &[(usize, f64, f64, f64)]| (r[2].2 / r[0].2).ln() / 4f64.ln();
    let weak = slope(&rows);
    let strong = slope(&sweep("poly43"));
    assert!(weak <= -0.5, "slope {weak}");
    assert!(strong < weak - 1.0, "{strong} vs {weak}");
}

#[test]
fn sweep_file_is_written() {
    let tmp = tempfile::tempdir().unwrap();
    let out = p(tmp.path(), "s");
    assert_eq!(
        cli(&["--problem", "invert-initial", "--alpha", "0.5", "--T", "1", "--K", "10", "--func", "poly43",
            "--sweep-k", "5,10,20", "--out-dir", &out]),
        0
    );
    let text = fs::read_to_string(Path::new(&out).join(CONVERGENCE_FILE)).unwrap();
    assert!(text.starts_with("K,delta_u,delta_g,delta_uxx\n"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn grid_input_is_interpolated() {
    let tmp = tempfile::tempdir().unwrap();
    let csv = tmp.path().join("g.csv");
    let mut text = String::from("x,value\n");
    for i in 0..=400 {
        let x = i as f64 / 400.0;
        text.push_str(&format!("{x:.17e},{:.17e}\n", x.powi(4) * (1.0 - x).powi(3)));
    }
    fs::write(&csv, text).unwrap();
    let a = p(tmp.path(), "a");
    let b = p(tmp.path(), "b");
    let base = ["--problem", "forward", "--alpha", "0.6", "--T", "0.5", "--K", "20"];
    let mut args = base.to_vec();
    args.extend(["--in-g", csv.to_str().unwrap(), "--out-dir", &a]);
    assert_eq!(cli(&args), 0);
    let mut args = base.to_vec();
    args.extend(["--func", "poly43", "--out-dir", &b]);
    assert_eq!(cli(&args), 0);
    let ca = read_coefficients(&Path::new(&a).join("coefficients.json"), 20).unwrap();
    let cb = read_coefficients(&Path::new(&b).join("coefficients.json"), 20).unwrap();
    assert!(ca.difference(&cb).unwrap().sup_norm() < 1e-9);
}

#[test]
fn exit_codes_from_binary() {
    let tmp = tempfile::tempdir().unwrap();
    let out = p(tmp.path(), "out");
    // config errors
    assert_eq!(status(&["--problem", "forward", "--alpha", "0", "--T", "1", "--K", "5", "--func", "poly43", "--out-dir", &out]), 2);
    assert_eq!(status(&["--problem", "forward", "--alpha", "0.5", "--T", "-1", "--K", "5", "--func", "poly43", "--out-dir", &out]), 2);
    assert_eq!(status(&["--problem", "forward", "--alpha", "0.5", "--T", "1", "--K", "5", "--quad-order", "10", "--func", "poly43", "--out-dir", &out]), 2);
    assert_eq!(status(&["--problem", "forward", "--alpha", "0.5", "--T", "1", "--K", "5", "--func", "poly99", "--out-dir", &out]), 2);
    assert_eq!(status(&["--problem", "forward", "--alpha", "0.5", "--T", "1", "--K", "5", "--func", "poly43"]), 2);
    assert_eq!(status(&["--problem", "invert-source", "--alpha", "0.5", "--T", "1", "--K", "5", "--func", "poly43", "--out-dir", &out]), 2);
    assert_eq!(status(&["--config", "r.json", "--alpha", "0.5", "--out-dir", &out]), 2);
    assert_eq!(status(&["--bogus"]), 2);

    // parse errors
    let missing = tmp.path().join("missing.csv");
    fs::write(&missing, "x,value\n0,1\n1\n").unwrap();
    assert_eq!(status(&["--problem", "invert-initial", "--alpha", "0.5", "--T", "1", "--K", "5", "--in-f", missing.to_str().unwrap(), "--out-dir", &out]), 3);
    let bad_json = tmp.path().join("bad.json");
    fs::write(&bad_json, "[{\"k\": 1, \"coeff\": 2}]").unwrap();
    assert_eq!(status(&["--problem", "invert-initial", "--alpha", "0.5", "--T", "1", "--K", "5", "--in-f", bad_json.to_str().unwrap(), "--out-dir", &out]), 3);
    assert_eq!(status(&["--config", tmp.path().join("nope.json").to_str().unwrap(), "--out-dir", &out]), 3);

    // overflow
    let big = tmp.path().join("big.json");
    fs::write(&big, "[{\"k\": 40, \"lambda_k\": 124.0, \"coeff\": 1e306}]").unwrap();
    let o = bin()
        .args(["--problem", "invert-initial", "--alpha", "0.5", "--T", "1", "--K", "40", "--in-f", big.to_str().unwrap(), "--out-dir", &out])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    let msg = String::from_utf8(o.stderr).unwrap();
    assert_eq!(msg.lines().count(), 1);
    assert!(msg.contains("mode 40"), "{msg}");

    assert!(!Path::new(&out).exists());
}

#[test]
fn writes_only_inside_out_dir() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("nested/out");
    let code = bin()
        .current_dir(tmp.path())
        .args(["--problem", "forward", "--alpha", "0.5", "--T", "1", "--K", "8", "--func", "poly44", "--out-dir", out.to_str().unwrap()])
        .status()
        .unwrap()
        .code();
    assert_eq!(code, Some(0));
    let top: Vec<PathBuf> = fs::read_dir(tmp.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(top, vec![tmp.path().join("nested")]);
    let mut files: Vec<String> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    files.sort();
    assert_eq!(files, ["coefficients.json", "report.json", "values.csv"]);
}

#[test]
fn noise_is_seeded() {
    let args = |seed: &str| {
        Args::parse_from([
            "fracbessel", "--problem", "invert-initial", "--alpha", "0.5", "--T", "1", "--K", "10",
            "--func", "poly43", "--noise", "1e-3", "--seed", seed,
        ])
        .to_config()
        .unwrap()
    };
    let a = run(&args("1")).unwrap();
    assert_eq!(a, run(&args("1")).unwrap());
    assert_ne!(a.files, run(&args("2")).unwrap().files);
    assert_eq!(a.report.config.problem, ProblemKind::InvertInitial);
}

#[test]
fn values_file_has_full_precision() {
    let config = Args::parse_from([
        "fracbessel", "--problem", "forward", "--alpha", "0.3", "--T", "2", "--K", "12", "--grid", "7",
        "--func", "mode:1",
    ])
    .to_config()
    .unwrap();
    let out = run(&config).unwrap();
    let (_, values) = out.files.iter().find(|(n, _)| n == "values.csv").unwrap();
    let mut lines = values.lines();
    assert_eq!(lines.next(), Some("x,value"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 7);
    let digits = rows[1].split(',').nth(1).unwrap().split('e').next().unwrap().replace(['-', '.'], "");
    assert_eq!(digits.len(), 17);
}
