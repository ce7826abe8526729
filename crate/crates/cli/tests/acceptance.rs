//! End-to-end acceptance gate: eleven numbered criteria, each reported as
//! one [PASS]/[FAIL] line on stdout (use `cargo test --test acceptance --
//! --nocapture` to see every line), plus process-level determinism,
//! round-trip, and exit-code checks on the `flaplace` binary.
//!
//! Criteria that measure red at the pinned parameters are left red on
//! purpose; their tolerances are not loosened to force a pass.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::process::Command;

use fourier_laplace::kernels::{summation_weights, KernelMethod};
use fourier_laplace::SphereContext;

const TOL_IDENTITY: f64 = 1e-12;
const TOL_NORMALIZATION: f64 = 1e-9;
const TOL_ADDITION: f64 = 1e-10;
const TOL_DEGENERACY: f64 = 1e-12;
const ENVELOPE_VARIATION_CAP: f64 = 4.0;
const TOL_CAUCHY: f64 = 0.01;
const DIVERGENCE_FLOOR: f64 = 10.0;
const TOL_CONVERGE: f64 = 1e-3;
const GIBBS_FLOOR: f64 = 0.05;
const BANDWIDTH_RATIO_CAP: f64 = 2.0;
const REFINEMENT_CAP: f64 = 0.05;
const TOL_QUADRATURE: f64 = 1e-10;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_flaplace")
}

fn out_dir(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&dir);
    dir
}

#[derive(Clone, Copy)]
struct Verdict {
    pass: bool,
    measured: f64,
    threshold: f64,
}

struct Run {
    status: Option<i32>,
    dir: PathBuf,
    summary: BTreeMap<String, Verdict>,
}

impl Run {
    fn verdict(&self, id: &str) -> Verdict {
        *self
            .summary
            .get(id)
            .unwrap_or_else(|| panic!("{id} missing from summary.csv"))
    }
}

fn flaplace(name: &str, args: &[&str]) -> Run {
    let dir = out_dir(name);
    let output = Command::new(bin())
        .args(args)
        .arg("--out")
        .arg(&dir)
        .env_remove("FLAPLACE_OUT")
        .output()
        .expect("failed to spawn flaplace");
    let status = output.status.code();
    assert!(
        status.is_some(),
        "flaplace killed by signal; stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let text = fs::read_to_string(dir.join("summary.csv")).unwrap_or_else(|e| {
        panic!(
            "no summary.csv from `flaplace {}`: {e}; stderr: {}",
            args.join(" "),
            String::from_utf8_lossy(&output.stderr)
        )
    });
    let mut summary = BTreeMap::new();
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 4, "summary row shape: {line}");
        summary.insert(
            cols[0].to_string(),
            Verdict {
                pass: cols[1] == "true",
                measured: cols[2].parse().expect("measured column"),
                threshold: cols[3].parse().expect("threshold column"),
            },
        );
    }
    Run {
        status,
        dir,
        summary,
    }
}

fn announce(criterion: &str, pass: bool, detail: &str) {
    println!("[{}] {criterion}: {detail}", if pass { "PASS" } else { "FAIL" });
}

#[test]
fn criterion_01_composite_identity() {
    let run = flaplace("c01", &["abel-identity"]);
    let v = run.verdict("criterion_1");
    let ok = v.pass && v.measured <= TOL_IDENTITY && v.threshold == TOL_IDENTITY;
    announce(
        "criterion 1",
        ok,
        &format!(
            "worst identity deviation {:.3e} (tolerance {TOL_IDENTITY:.0e})",
            v.measured
        ),
    );
    assert!(ok, "identity deviation {:.3e}", v.measured);
    assert_eq!(run.status, Some(0), "abel-identity run should exit clean");
}

#[test]
fn criterion_02_kernel_normalization() {
    let mut worst = 0.0f64;
    let mut ok = true;
    for dim in ["2", "3"] {
        let run = flaplace(&format!("c02-n{dim}"), &["kernel-bounds", "--dim-n", dim]);
        let v = run.verdict("criterion_2");
        worst = worst.max(v.measured);
        ok &= v.pass && v.threshold == TOL_NORMALIZATION;
    }
    ok &= worst <= TOL_NORMALIZATION;
    announce(
        "criterion 2",
        ok,
        &format!(
            "worst kernel mass deviation {worst:.3e} over both dimensions (tolerance {TOL_NORMALIZATION:.0e})"
        ),
    );
    assert!(ok, "kernel mass deviation {worst:.3e}");
}

#[test]
fn criterion_03_zonal_matches_independent_legendre() {
    // Independent check: the recurrence behind the library's zonal frame
    // against a locally coded Legendre recurrence, scaled by (2k+1)/(4 pi).
    let degree = 200usize;
    let angles = 1000usize;
    let ctx = SphereContext::new(2, degree).unwrap();
    let mut worst = 0.0f64;
    for i in 0..angles {
        let gamma = PI * (i as f64 + 0.5) / angles as f64;
        let t = gamma.cos();
        let mut p = vec![0.0f64; degree + 1];
        p[0] = 1.0;
        p[1] = t;
        for k in 1..degree {
            p[k + 1] =
                ((2 * k + 1) as f64 * t * p[k] - k as f64 * p[k - 1]) / (k + 1) as f64;
        }
        for (k, r) in ctx.unit_zonal(t).unwrap().take(degree + 1).enumerate() {
            let got = ctx.zonal_scale(k) * r;
            let expected = (2 * k + 1) as f64 / (4.0 * PI) * p[k];
            worst = worst.max((got - expected).abs());
        }
    }
    let ok = worst <= TOL_ADDITION;
    announce(
        "criterion 3",
        ok,
        &format!(
            "zonal vs independent Legendre: worst |diff| {worst:.3e} for k <= {degree} on {angles} angles (tolerance {TOL_ADDITION:.0e})"
        ),
    );
    assert!(ok, "addition-theorem deviation {worst:.3e}");
}

#[test]
fn criterion_04_zero_order_degeneracy() {
    let run = flaplace("c04", &["dump-kernel"]);
    let v = run.verdict("criterion_4");
    // The run byte-compares the three kernel grids; the multipliers are
    // compared here directly.
    let ctx = SphereContext::new(2, 64).unwrap();
    let mut worst = 0.0f64;
    for n in 1..=64usize {
        let p = summation_weights(&ctx, KernelMethod::Partial, n).unwrap();
        let r = summation_weights(&ctx, KernelMethod::Riesz { alpha: 0.0 }, n).unwrap();
        let c = summation_weights(&ctx, KernelMethod::Cesaro { alpha: 0.0 }, n).unwrap();
        for k in 0..=n {
            worst = worst.max((r[k] - p[k]).abs()).max((c[k] - p[k]).abs());
        }
    }
    let ok = v.pass && worst <= TOL_DEGENERACY;
    announce(
        "criterion 4",
        ok,
        &format!(
            "order-zero kernels byte-identical ({} grid mismatches), multipliers within {worst:.3e} (tolerance {TOL_DEGENERACY:.0e})",
            v.measured
        ),
    );
    assert!(ok, "degeneracy broke: {} mismatches, {worst:.3e}", v.measured);
}

#[test]
fn criterion_05_envelope_stability() {
    // (dimension, order) pairs: order 0, the critical order, and the
    // dimension itself.
    let combos: [(&str, &str); 6] = [
        ("2", "0.0"),
        ("2", "0.5"),
        ("2", "2.0"),
        ("3", "0.0"),
        ("3", "1.0"),
        ("3", "3.0"),
    ];
    let mut lines = Vec::new();
    let mut all_ok = true;
    let mut worst = 0.0f64;
    for (dim, alpha) in combos {
        let run = flaplace(
            &format!("c05-n{dim}-a{alpha}"),
            &["kernel-bounds", "--dim-n", dim, "--alpha", alpha],
        );
        let v = run.verdict("criterion_5");
        all_ok &= v.pass;
        worst = worst.max(v.measured);
        lines.push(format!(
            "N={dim} alpha={alpha}: sup-ratio variation {:.2}",
            v.measured
        ));
    }
    announce(
        "criterion 5",
        all_ok,
        &format!(
            "envelope sup-ratio variation across degrees 64..512 must stay under {ENVELOPE_VARIATION_CAP} [{}]",
            lines.join("; ")
        ),
    );
    assert!(
        all_ok,
        "envelope variation reached {worst:.2} (cap {ENVELOPE_VARIATION_CAP}); per-combo: {}",
        lines.join("; ")
    );
}

#[test]
fn criterion_06a_series_cauchy_above_critical() {
    let run = flaplace("c06a", &["tn-series", "--alpha", "0.3", "--tau", "0.6"]);
    let v = run.verdict("criterion_6a");
    let ok = v.pass && v.measured < TOL_CAUCHY;
    announce(
        "criterion 6a",
        ok,
        &format!(
            "comparison-series increment |S_128 - S_64| = {:.4} (tolerance {TOL_CAUCHY})",
            v.measured
        ),
    );
    assert!(
        ok,
        "Cauchy increment {:.4} not below {TOL_CAUCHY}",
        v.measured
    );
}

#[test]
fn criterion_06b_series_divergence_at_critical() {
    let run = flaplace("c06b", &["tn-series", "--alpha", "0.1", "--tau", "0.4"]);
    let v = run.verdict("criterion_6b");
    let ok = v.pass && v.measured >= DIVERGENCE_FLOOR;
    announce(
        "criterion 6b",
        ok,
        &format!(
            "harmonic-side partial sum {:.3} at 1e5 terms (floor {DIVERGENCE_FLOOR})",
            v.measured
        ),
    );
    assert!(ok, "partial sum {:.3} below {DIVERGENCE_FLOOR}", v.measured);
}

#[test]
fn criterion_07_smooth_convergence_and_reproduction() {
    let run = flaplace("c07", &["converge"]);
    let v = run.verdict("criterion_7");
    let ok = v.pass && v.measured < TOL_CONVERGE;
    announce(
        "criterion 7",
        ok,
        &format!(
            "heat-target sup error {:.3e} at degree 512, strictly decreasing, band-limited data reproduced (tolerance {TOL_CONVERGE:.0e})",
            v.measured
        ),
    );
    assert!(ok, "convergence failed: final error {:.3e}", v.measured);
    assert_eq!(run.status, Some(0));
}

#[test]
fn criterion_08_jump_overshoot_contrast() {
    let run = flaplace(
        "c08",
        &["converge", "--test-function", "cap", "--alpha", "1.1"],
    );
    let v = run.verdict("criterion_8");
    let ok = v.pass && v.measured > GIBBS_FLOOR;
    announce(
        "criterion 8",
        ok,
        &format!(
            "raw-truncation overshoot floor {:.3} near the jump at every degree (must exceed {GIBBS_FLOOR}); supercritical means converge away from it",
            v.measured
        ),
    );
    assert!(ok, "overshoot floor {:.3}", v.measured);
    assert_eq!(run.status, Some(0));
}

#[test]
fn criterion_09_maximal_ratio_bounded_across_bandwidths() {
    let run = flaplace("c09", &["maximal-ineq"]);
    let v = run.verdict("criterion_9");
    let ok = v.pass && v.measured < BANDWIDTH_RATIO_CAP;
    announce(
        "criterion 9",
        ok,
        &format!(
            "worst L1 maximal-to-smoothness ratio grows {:.3}x from bandwidth 16 to 32 (cap {BANDWIDTH_RATIO_CAP}x); antipodal domination constant finite",
            v.measured
        ),
    );
    assert!(ok, "ratio growth {:.3}", v.measured);
}

#[test]
fn criterion_10_grid_refinement_stability() {
    let run = flaplace("c10", &["maximal-ineq"]);
    let v = run.verdict("criterion_10");
    let ok = v.pass && v.measured < REFINEMENT_CAP;
    announce(
        "criterion 10",
        ok,
        &format!(
            "per-bandwidth ratio drift {:.4} under grid doubling (cap {REFINEMENT_CAP}); no maximal value decreased",
            v.measured
        ),
    );
    assert!(ok, "refinement drift {:.4}", v.measured);
}

#[test]
fn criterion_11_quadrature_self_validation() {
    let run = flaplace(
        "c11",
        &["kernel-bounds", "--tol-quadrature", "1e-10"],
    );
    let v = run.verdict("criterion_11");
    let ok = v.pass && v.measured <= TOL_QUADRATURE;
    announce(
        "criterion 11",
        ok,
        &format!(
            "node-doubling and exactness deviation {:.3e} (tolerance {TOL_QUADRATURE:.0e})",
            v.measured
        ),
    );
    assert!(ok, "quadrature self-validation at {:.3e}", v.measured);
}

#[test]
fn reruns_are_byte_identical() {
    let a = flaplace("det-a", &["converge"]);
    let b = flaplace("det-b", &["converge"]);
    for name in ["config.txt", "report.csv", "summary.csv", "errors.csv"] {
        let x = fs::read(a.dir.join(name)).unwrap();
        let y = fs::read(b.dir.join(name)).unwrap();
        assert!(x == y, "{name} differs between identical runs");
    }
}

#[test]
fn config_echo_reproduces_the_run() {
    let a = flaplace("rt-a", &["tn-series"]);
    let echo = a.dir.join("config.txt");
    let b = flaplace("rt-b", &["tn-series", "--config", echo.to_str().unwrap()]);
    for name in ["config.txt", "report.csv", "summary.csv", "series.csv"] {
        let x = fs::read(a.dir.join(name)).unwrap();
        let y = fs::read(b.dir.join(name)).unwrap();
        assert!(x == y, "{name} differs when rerun from the config echo");
    }
}

#[test]
fn exit_codes_follow_verdicts() {
    // All-green run exits 0.
    let pass = flaplace("exit-pass", &["dump-kernel"]);
    assert_eq!(pass.status, Some(0));
    // A red criterion exits 1 (the tail-series increment at these orders
    // measures well above its tolerance).
    let fail = flaplace("exit-fail", &["tn-series", "--alpha", "0.3", "--tau", "0.6"]);
    assert_eq!(fail.status, Some(1));
    // Unusable configuration exits 2.
    let bad = Command::new(bin())
        .args(["tn-series", "--alpha", "not-a-number"])
        .arg("--out")
        .arg(out_dir("exit-bad"))
        .env_remove("FLAPLACE_OUT")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    // No output destination at all exits 2.
    let nowhere = Command::new(bin())
        .arg("dump-kernel")
        .env_remove("FLAPLACE_OUT")
        .output()
        .unwrap();
    assert_eq!(nowhere.status.code(), Some(2));
}

#[test]
fn env_var_supplies_the_output_root() {
    let root = out_dir("env-root");
    let output = Command::new(bin())
        .arg("dump-kernel")
        .env("FLAPLACE_OUT", &root)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(root.join("dump-kernel").join("summary.csv").exists());
    assert!(root.join("dump-kernel").join("kernel.csv").exists());
}
