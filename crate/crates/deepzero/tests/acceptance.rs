//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line with its pinned tolerance, plus end-to-end checks of the
//! CLI surface (headers, exit codes, byte determinism).

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use deepzero_core::bargmann::{
    bargmann_forward, bargmann_inverse, L2Function, QuadratureGrid,
};
use deepzero_core::counterexample;
use deepzero_core::operators::{commutation_check, displacement_padded, reflection_matrix};
use deepzero_core::seminorm::{
    recover_phi, sampling_constant, seminorm_direct, seminorm_gram, symmetrized_seminorm,
    translate_pair_bound, xi_eta, IndexSet, Parity,
};
use deepzero_core::{kernel_vector, C64, FockVector, Matrix, Pad};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(name: &str, ok: bool, detail: &str) {
    println!("acceptance {name}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn random_vector(rng: &mut ChaCha8Rng, degree: usize) -> FockVector {
    FockVector::new(
        (0..degree)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
}

fn random_point(rng: &mut ChaCha8Rng, radius: f64) -> C64 {
    loop {
        let z = c(
            rng.gen_range(-radius..radius),
            rng.gen_range(-radius..radius),
        );
        if z.norm() <= radius {
            return z;
        }
    }
}

/// Criterion 1: reproducing property, 200 random f, |w| <= 2, 1e-12 * ||f||.
#[test]
fn criterion_01_reproducing_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let degree = rng.gen_range(2..=32);
        let f = random_vector(&mut rng, degree);
        let w = random_point(&mut rng, 2.0);
        let defect = (f.inner(&kernel_vector(w, degree)) - f.evaluate(w)).norm();
        worst = worst.max(defect / f.norm());
    }
    report(
        "01 reproducing-property (tol 1e-12)",
        worst < 1e-12,
        &format!("worst relative defect {worst:.3e}"),
    );
}

/// Criterion 2: displacement near-unitarity and commutation at degree 32,
/// |alpha|, |beta| <= 2, residuals < 1e-9.
#[test]
fn criterion_02_displacement_unitarity_commutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst_unitary = 0.0f64;
    let mut worst_commute = 0.0f64;
    for _ in 0..20 {
        let alpha = random_point(&mut rng, 2.0);
        let beta = random_point(&mut rng, 2.0);
        let d = displacement_padded(alpha, 32, Pad::Auto);
        worst_unitary = worst_unitary.max(d.matrix().gram().sub(&Matrix::identity(32)).max_abs());
        let rep = commutation_check(alpha, beta, 32, 160).unwrap();
        worst_commute = worst_commute.max(rep.residual);
        let phase = c(0.0, -(alpha * beta.conj()).im).exp();
        worst_commute = worst_commute.max((rep.phase - phase).norm());
    }
    report(
        "02 displacement-unitarity-commutation (tol 1e-9)",
        worst_unitary < 1e-9 && worst_commute < 1e-9,
        &format!("unitarity {worst_unitary:.3e}, commutation {worst_commute:.3e}"),
    );
}

/// Criterion 3: Bargmann isometry on 100 functions and both intertwinings,
/// relative defects < 1e-6 for beta in {0.5, 1, 2}.
#[test]
fn criterion_03_bargmann_isometry_intertwining() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let grid = QuadratureGrid::gauss_hermite_scaled(301).unwrap();
    let mut worst_iso = 0.0f64;
    for _ in 0..100 {
        let degree = rng.gen_range(2..=30);
        let phi = bargmann_inverse(&random_vector(&mut rng, degree), &grid);
        let v = bargmann_forward(&phi, 60);
        worst_iso = worst_iso.max((v.norm_sqr() - phi.norm_sqr()).abs() / phi.norm_sqr());
    }
    let mut worst_mod = 0.0f64;
    let mut worst_refl = 0.0f64;
    for &beta in &[0.5, 1.0, 2.0] {
        let phi = bargmann_inverse(&random_vector(&mut rng, 12), &grid);
        let scale = phi.norm_sqr().sqrt();
        let lhs = bargmann_forward(&phi.modulate(beta), 48);
        let d = displacement_padded(c(beta, 0.0), 48, Pad::Auto);
        let rhs = d.apply(&bargmann_forward(&phi, 48)).truncated(48);
        worst_mod = worst_mod.max(lhs.sub(&rhs).norm() / scale);
        let lhs_r = bargmann_forward(&phi.reflect().unwrap(), 24);
        let rhs_r = reflection_matrix(24).apply(&bargmann_forward(&phi, 24));
        worst_refl = worst_refl.max(lhs_r.sub(&rhs_r).norm() / scale);
    }
    report(
        "03 bargmann-isometry-intertwining (tol 1e-6)",
        worst_iso < 1e-6 && worst_mod < 1e-6 && worst_refl < 1e-6,
        &format!("isometry {worst_iso:.3e}, modulation {worst_mod:.3e}, reflection {worst_refl:.3e}"),
    );
}

/// Criterion 4: three-route seminorm agreement < 1e-10, Bargmann route
/// < 1e-6, both parities, beta in {0.5, 1, 2}, 50 vectors each.
#[test]
fn criterion_04_three_route_seminorm() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let grid = QuadratureGrid::gauss_hermite_scaled(301).unwrap();
    let mut worst_finite = 0.0f64;
    let mut worst_line = 0.0f64;
    for &beta in &[0.5, 1.0, 2.0] {
        for (parity, set) in [(Parity::Even, IndexSet::Even), (Parity::Odd, IndexSet::Odd)] {
            let form = seminorm_gram(&set, beta, 12, Pad::Auto).unwrap();
            for _ in 0..50 {
                let v = random_vector(&mut rng, 12);
                let direct = seminorm_direct(&v, &set, beta, Pad::Auto).unwrap();
                let gram = form.quadratic_form(&v);
                let symm = symmetrized_seminorm(&v, parity, beta, Pad::Auto).unwrap();
                let scale = direct.max(1e-12);
                worst_finite = worst_finite.max((gram - direct).abs() / scale);
                worst_finite = worst_finite.max((symm - direct).abs() / scale);
            }
            // line route on a smaller batch: quadrature-limited accuracy
            for _ in 0..5 {
                let v = random_vector(&mut rng, 10);
                let direct = seminorm_direct(&v, &set, beta, Pad::Auto).unwrap();
                let phi = bargmann_inverse(&v, &grid);
                let (xi, eta) = xi_eta(&phi, beta, parity).unwrap();
                let line = 0.25 * (xi.norm_sqr() + eta.norm_sqr());
                worst_line = worst_line.max((line - direct).abs() / direct.max(1e-12));
            }
        }
    }
    report(
        "04 three-route-seminorm (tol 1e-10 finite, 1e-6 line)",
        worst_finite < 1e-10 && worst_line < 1e-6,
        &format!("finite routes {worst_finite:.3e}, line route {worst_line:.3e}"),
    );
}

/// Criterion 5: lambda_min(N) > 0 for N in {8..128}, both parities,
/// beta in {0.5, 1, 2}; beta = 0 gives exactly 1.
#[test]
fn criterion_05_uniqueness_positive_constants() {
    let mut ok = true;
    let mut detail = String::new();
    for &beta in &[0.5, 1.0, 2.0] {
        for set in [IndexSet::Even, IndexSet::Odd] {
            for &n in &[8usize, 16, 32, 64, 128] {
                let lam = sampling_constant(&set, beta, n, Pad::Auto).unwrap();
                if lam <= 0.0 {
                    ok = false;
                    detail = format!("beta={beta} N={n}: lambda_min={lam:.3e}");
                }
            }
        }
    }
    for set in [IndexSet::Even, IndexSet::Odd] {
        let lam = sampling_constant(&set, 0.0, 32, Pad::Auto).unwrap();
        if lam != 1.0 {
            ok = false;
            detail = format!("beta=0: lambda_min={lam}");
        }
    }
    report("05 uniqueness-positive-lambda (lambda_min > 0; beta=0 exact 1)", ok, &detail);
}

/// Criterion 6: lambda_min non-increasing in N, and the frozen regression
/// factor lambda_min(128) < 0.5 * lambda_min(8) at beta = 1.
#[test]
fn criterion_06_non_sampling_decay() {
    let mut ok = true;
    let mut detail = String::new();
    for set in [IndexSet::Even, IndexSet::Odd] {
        let lams: Vec<f64> = [8usize, 16, 32, 64, 128]
            .iter()
            .map(|&n| sampling_constant(&set, 1.0, n, Pad::Auto).unwrap())
            .collect();
        if !lams.windows(2).all(|w| w[1] <= w[0] + 1e-12) {
            ok = false;
            detail = format!("not non-increasing: {lams:?}");
        }
        if lams[4] >= 0.5 * lams[0] {
            ok = false;
            detail = format!("factor violated: {:.3e} vs {:.3e}", lams[4], lams[0]);
        }
    }
    report("06 non-sampling-decay (lambda_min(128) < 0.5 lambda_min(8))", ok, &detail);
}

/// Criterion 7: counterexample anchors — numerator <= 3, envelope integral
/// pi/2 +- 1e-8, denominator blow-up, strictly decreasing ratio.
#[test]
fn criterion_07_counterexample_anchors() {
    let mut ok = true;
    let mut detail = String::new();
    let envelope = counterexample::envelope_mass().unwrap();
    if (envelope - std::f64::consts::FRAC_PI_2).abs() > 1e-8 {
        ok = false;
        detail = format!("envelope {envelope}");
    }
    let thetas = [0.5, 0.2, 0.1, 0.05];
    let recs: Vec<_> = thetas
        .iter()
        .map(|&t| counterexample::sampling_ratio(t, 1.0).unwrap())
        .collect();
    for rec in &recs {
        // numerator = (1/4)||eta||^2 with the paper bound ||eta||^2 <= 3
        if 4.0 * rec.numerator > 3.0 {
            ok = false;
            detail = format!("theta={}: numerator {:.3e}", rec.theta, rec.numerator);
        }
    }
    if recs[3].denominator <= 10.0 * recs[0].denominator {
        ok = false;
        detail = format!(
            "denominators {:.3e} vs {:.3e}",
            recs[3].denominator, recs[0].denominator
        );
    }
    if !recs.windows(2).all(|w| w[1].ratio < w[0].ratio) {
        ok = false;
        detail = "ratio not strictly decreasing".into();
    }
    report("07 counterexample-anchors (numerator <= 3, pi/2 +- 1e-8)", ok, &detail);
}

/// Criterion 8: recovery round-trip < 1e-10 unmasked on 50 random smooth
/// functions, and the incompatible demo norm grows > 10x over 4 levels.
#[test]
fn criterion_08_recovery_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    // nodes hit the zeros of cos t exactly: step pi/8 over [-4 pi, 4 pi]
    let grid = QuadratureGrid::uniform_symmetric(std::f64::consts::PI / 8.0, 32);
    let mut worst = 0.0f64;
    for k in 0..50 {
        let phi = bargmann_inverse(&random_vector(&mut rng, 10), &grid);
        let parity = if k % 2 == 0 { Parity::Even } else { Parity::Odd };
        let (xi, eta) = xi_eta(&phi, 1.0, parity).unwrap();
        let rec = recover_phi(&xi, &eta, 1.0, 1e-6).unwrap();
        let scale = phi.values().iter().map(|v| v.norm()).fold(1e-12, f64::max);
        let err = rec
            .func
            .values()
            .iter()
            .zip(phi.values())
            .zip(&rec.mask)
            .filter(|&(_, &used)| used)
            .map(|((got, want), _)| (got - want).norm())
            .fold(0.0, f64::max);
        worst = worst.max(err / scale);
    }
    // incompatible data through the CLI demo
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("demo.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_deepzero"))
        .args(["recover-demo", "--beta", "1", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    let text = std::fs::read_to_string(&out).unwrap();
    let norms: Vec<f64> = text
        .lines()
        .filter(|l| l.starts_with("incompatible"))
        .map(|l| l.split(',').nth(7).unwrap().parse().unwrap())
        .collect();
    let growth_ok = norms.len() == 4 && norms[3] > 10.0 * norms[0];
    report(
        "08 recovery-formula (tol 1e-10; incompatible growth > 10x)",
        worst < 1e-10 && status.success() && growth_ok,
        &format!("roundtrip {worst:.3e}, demo norms {norms:?}"),
    );
}

/// Criterion 9: both section-3 inequalities on 100 random inputs,
/// residual <= 1e-9 relative to the right-hand side.
#[test]
fn criterion_09_inequality_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let grid = QuadratureGrid::gauss_hermite_scaled(301).unwrap();
    let mut worst = 0.0f64;
    for k in 0..100u64 {
        let beta = [0.5, 1.0, 2.0][(k % 3) as usize];
        // translate-pair bound on the Fock side
        let v = random_vector(&mut rng, 12);
        let (lhs, rhs) = translate_pair_bound(&v, beta, Pad::Auto).unwrap();
        worst = worst.max((lhs - rhs) / rhs.max(1e-12));
        // omega_beta bound on the line side: 4 ||cos(beta t) phi||^2 <= 8 ||f||^2
        let phi = bargmann_inverse(&random_vector(&mut rng, 10), &grid);
        let (xi, eta) = xi_eta(&phi, beta, Parity::Even).unwrap();
        let rhs_line = 2.0 * (xi.norm_sqr() + eta.norm_sqr());
        let weighted = L2Function::new(
            grid.clone(),
            grid.nodes()
                .iter()
                .zip(phi.values())
                .map(|(&t, v)| v * (beta * t).cos())
                .collect(),
        );
        let lhs_line = 4.0 * weighted.norm_sqr();
        worst = worst.max((lhs_line - rhs_line) / rhs_line.max(1e-12));
    }
    report(
        "09 inequality-suite (residual <= 1e-9)",
        worst <= 1e-9,
        &format!("worst scaled excess {worst:.3e}"),
    );
}

/// Criterion 10: `deepzero verify` exits 0 in under 2 minutes.
#[test]
fn criterion_10_verify_runtime() {
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_deepzero"))
        .arg("verify")
        .status()
        .unwrap();
    let elapsed = start.elapsed();
    report(
        "10 verify-exit-0-under-2-minutes",
        status.success() && elapsed.as_secs() < 120,
        &format!("exit {status:?} after {elapsed:?}"),
    );
}

// ---- CLI end-to-end: schemas, exit codes, determinism ----

fn run(args: &[&str], out: Option<&Path>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_deepzero"));
    cmd.args(args);
    if let Some(path) = out {
        cmd.arg("--out").arg(path);
    }
    let output = cmd.output().unwrap();
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).into_owned(),
    )
}

#[test]
fn cli_headers_match_schema() {
    let dir = tempfile::tempdir().unwrap();
    let sweep = dir.path().join("sweep.csv");
    let (code, _) = run(
        &["sampling-sweep", "--beta", "1", "--parity", "odd", "--degrees", "4,8"],
        Some(&sweep),
    );
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&sweep).unwrap();
    assert!(text.starts_with("# deepzero sampling-sweep "));
    assert_eq!(text.lines().nth(1), Some("N,beta,parity,pad,lambda_min"));

    let theta = dir.path().join("theta.csv");
    let (code, _) = run(&["theta-sweep", "--beta", "1", "--thetas", "0.5,0.35"], Some(&theta));
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&theta).unwrap();
    assert_eq!(
        text.lines().nth(1),
        Some("theta,beta,numerator,denominator,ratio,error")
    );

    let demo = dir.path().join("demo.csv");
    let (code, _) = run(&["recover-demo", "--beta", "1"], Some(&demo));
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&demo).unwrap();
    assert_eq!(
        text.lines().nth(1),
        Some("scenario,level,beta,step,nodes,masked,max_error,norm_sqr")
    );

    let gram = dir.path().join("gram.json");
    let (code, _) = run(
        &["gram-export", "--degree", "4", "--beta", "1", "--parity", "even", "--format", "json"],
        Some(&gram),
    );
    assert_eq!(code, 0);
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&gram).unwrap()).unwrap();
    assert_eq!(parsed["degree"], 4);
    assert!(parsed["config"]
        .as_str()
        .unwrap()
        .starts_with("deepzero gram-export "));
}

#[test]
fn cli_exit_codes() {
    // 0: success
    let (code, stdout) = run(&["verify"], None);
    assert_eq!(code, 0);
    assert!(stdout.contains("verify: PASS"));
    // 1: invariant failure at an unattainable tolerance
    let (code, stdout) = run(&["verify", "--tol", "1e-30"], None);
    assert_eq!(code, 1);
    assert!(stdout.contains("verify: FAIL"));
    // 2: configuration errors
    let (code, _) = run(&["theta-sweep", "--beta", "0"], None);
    assert_eq!(code, 2);
    let (code, _) = run(&["sampling-sweep", "--degrees", "8,4"], None);
    assert_eq!(code, 2);
    let (code, _) = run(&["gram-export", "--degree", "1"], None);
    assert_eq!(code, 2);
    let (code, _) = run(&["sampling-sweep", "--pad", "bogus"], None);
    assert_eq!(code, 2);
}

#[test]
fn cli_outputs_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = ["sampling-sweep", "--beta", "1", "--parity", "even", "--degrees", "4,8,16,32"];
    // different thread caps must not change the bytes
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_deepzero"));
    cmd.args(args).arg("--out").arg(&a).env("DEEPZERO_THREADS", "1");
    assert!(cmd.status().unwrap().success());
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_deepzero"));
    cmd.args(args).arg("--out").arg(&b).env("DEEPZERO_THREADS", "4");
    assert!(cmd.status().unwrap().success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let ta = dir.path().join("ta.csv");
    let tb = dir.path().join("tb.csv");
    let targs = ["theta-sweep", "--beta", "1", "--thetas", "0.5,0.35"];
    let (code, _) = run(&targs.iter().chain(["--out", ta.to_str().unwrap()].iter()).copied().collect::<Vec<_>>(), None);
    assert_eq!(code, 0);
    let (code, _) = run(&targs.iter().chain(["--out", tb.to_str().unwrap()].iter()).copied().collect::<Vec<_>>(), None);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read(&ta).unwrap(), std::fs::read(&tb).unwrap());
}

#[test]
fn cli_config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("run.cfg");
    std::fs::write(&cfg_path, "beta = 2.0\ndegrees = 4,8\nparity = odd\n").unwrap();
    let out = dir.path().join("sweep.csv");
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_deepzero"));
    cmd.args(["sampling-sweep", "--beta", "1.0"])
        .arg("--config")
        .arg(&cfg_path)
        .arg("--out")
        .arg(&out);
    assert!(cmd.status().unwrap().success());
    let text = std::fs::read_to_string(&out).unwrap();
    // flag overrides the file's beta, the file supplies degrees and parity
    assert!(text.lines().next().unwrap().contains("beta=1 parity=odd degrees=4,8"));
    assert_eq!(text.lines().count(), 4);
}
