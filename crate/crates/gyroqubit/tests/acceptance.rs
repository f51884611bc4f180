//! Acceptance suite: every release gate in one target, each test printing a
//! single PASS line (run with `cargo test --test acceptance -- --nocapture`
//! to see them). Tolerances are pinned here, not configured.

use gyroqubit::density::DensityMatrix;
use gyroqubit::gyrovector::BlochVector;
use gyroqubit::hermitian2::{Complex2x2, Hermitian2};
use gyroqubit::metrics::{prop_bound, rapidity_metric, trace_metric};
use gyroqubit::verify::{run_suite, sample_ball, TrialConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::process::Command;

const SEED: u64 = 42;
const SQRT2_LN2: f64 = 0.980_258_143_468_547_2;
const DELTA_MIXED_TO_06: f64 = 1.029_801_979_422_567_2;

fn cfg(trials: u64) -> TrialConfig {
    TrialConfig { seed: SEED, trials, ..TrialConfig::default() }
}

fn assert_clean(report: &gyroqubit::SuiteReport) {
    assert_eq!(
        report.violations,
        0,
        "suite {} violated: {}",
        report.suite_id,
        serde_json::to_string(report).unwrap()
    );
    assert!(report.max_residual <= 1.0);
}

#[test]
fn gyrogroup_axioms_hold_at_scale() {
    // G1-G5, gyrocommutativity, and 2-divisibility over 1e4 stratified
    // triples, cap 0.999, residuals at 1e-9 relative, inside 10 seconds.
    let report = run_suite("axioms", &cfg(10_000)).unwrap();
    assert_clean(&report);
    assert!(report.elapsed_ms < 10_000.0, "took {} ms", report.elapsed_ms);
    println!("PASS gyrogroup axioms: 1e4 triples, max residual {:.3e} of tolerance", report.max_residual);
}

#[test]
fn ball_and_state_compositions_are_isomorphic() {
    // Entrywise agreement of the two composition routes at 1e-12 over 1e4
    // pairs, plus the worked orthogonal pair.
    let report = run_suite("isomorphism", &cfg(10_000)).unwrap();
    assert_clean(&report);

    let a = DensityMatrix::from_bloch(BlochVector::new(0.5, 0.0, 0.0)).unwrap();
    let b = DensityMatrix::from_bloch(BlochVector::new(0.0, 0.5, 0.0)).unwrap();
    let got = a.odot(&b).unwrap().bloch();
    let want = BlochVector::new(0.5, 0.433_012_7, 0.0);
    assert!(got.max_abs_diff(&want) <= 1e-7, "{got:?}");
    println!("PASS isomorphism: 1e4 pairs entrywise at 1e-12, worked pair at 1e-7");
}

#[test]
fn closed_form_square_root_squares_back() {
    // sqrt(rho)^2 = rho at 1e-13 over 1e4 samples; known diagonal witness.
    let mut rng = ChaCha12Rng::seed_from_u64(SEED);
    for _ in 0..10_000 {
        let rho = DensityMatrix::from_bloch(sample_ball(&mut rng, 0.999)).unwrap();
        let root = Complex2x2::from_hermitian(&rho.sqrt().unwrap());
        let squared = root.mul(&root).hermitian_part();
        let residual = squared.max_abs_diff(&rho.matrix());
        assert!(residual <= 1e-13, "residual {residual}");
    }
    let witness = DensityMatrix::from_bloch(BlochVector::new(0.0, 0.0, 0.6)).unwrap();
    let root = witness.sqrt().unwrap();
    assert!((root.a11 - 0.894_427_2).abs() <= 1e-7);
    assert!((root.a22 - 0.447_213_6).abs() <= 1e-7);
    println!("PASS square root: 1e4 samples square back at 1e-13, witness at 1e-7");
}

#[test]
fn spectra_and_trace_products_match_closed_forms() {
    // Closed-form spectrum vs the eigensolver at 1e-13; closed-form overlap
    // vs the explicit matrix trace at 1e-14.
    let mut rng = ChaCha12Rng::seed_from_u64(SEED);
    for _ in 0..10_000 {
        let u = sample_ball(&mut rng, 0.999);
        let v = sample_ball(&mut rng, 0.999);
        let rho_u = DensityMatrix::from_bloch(u).unwrap();
        let rho_v = DensityMatrix::from_bloch(v).unwrap();

        let (plus, minus, det) = rho_u.spectrum();
        let eig = rho_u.matrix().eig();
        assert!((plus - eig.lambda1).abs() <= 1e-13);
        assert!((minus - eig.lambda2).abs() <= 1e-13);
        assert!((det - rho_u.matrix().det()).abs() <= 1e-13);

        let product = Complex2x2::from_hermitian(&rho_u.matrix())
            .mul(&Complex2x2::from_hermitian(&rho_v.matrix()));
        let explicit = (product.m[0][0] + product.m[1][1]).re;
        assert!((rho_u.trace_product(&rho_v) - explicit).abs() <= 1e-14);
    }
    println!("PASS spectra: closed forms match the solver at 1e-13 / traces at 1e-14");
}

#[test]
fn rapidity_metric_properties_hold() {
    // Positivity, indiscernibles, symmetry, triangle family,
    // left-invariance, homogeneity with r in [-3, 3]; 1e4 trials at 1e-9.
    let report = run_suite("metric_lemma", &cfg(10_000)).unwrap();
    assert_clean(&report);
    println!("PASS rapidity metric properties: max residual {:.3e} of tolerance", report.max_residual);
}

#[test]
fn trace_metric_structure_holds() {
    // Congruence invariance and the two log forms at 1e-10, square-root
    // contraction at 1e-12, over density pairs and scaled cone pairs.
    let report = run_suite("trace_lemma", &cfg(10_000)).unwrap();
    assert_clean(&report);
    println!("PASS trace metric structure: max residual {:.3e} of tolerance", report.max_residual);
}

#[test]
fn overlap_bound_dominates_trace_distance() {
    // delta <= sqrt(ln^2(x/a) + ln^2(x/b)) + 1e-12 over 1e5 stratified
    // pairs; at coincidence the bound collapses to sqrt(2) ln 2 while the
    // distance is exactly zero.
    let report = run_suite("bounds", &cfg(100_000)).unwrap();
    assert_clean(&report);

    let mut rng = ChaCha12Rng::seed_from_u64(SEED);
    for _ in 0..100 {
        let u = sample_ball(&mut rng, 0.999);
        let bound = prop_bound(&u, &u).unwrap();
        assert!((bound - SQRT2_LN2).abs() <= 1e-6, "bound {bound}");
        let m = DensityMatrix::from_bloch(u).unwrap().matrix();
        assert_eq!(trace_metric(&m, &m).unwrap(), 0.0);
    }
    println!("PASS overlap bound: 1e5 pairs one-sided at 1e-12, constant case at 1e-6");
}

#[test]
fn sqrt2_rapidity_never_exceeds_trace_distance() {
    // sqrt(2) d(u, v) <= delta(rho_u, rho_v) + 1e-12 over 1e5 pairs, and
    // the worked witness at the mixed state.
    let report = run_suite("bounds", &cfg(100_000)).unwrap();
    assert_clean(&report);

    let zero = BlochVector::new(0.0, 0.0, 0.0);
    let v = BlochVector::new(0.0, 0.0, 0.6);
    let lhs = std::f64::consts::SQRT_2 * rapidity_metric(&zero, &v).unwrap();
    let rhs = trace_metric(
        &DensityMatrix::maximally_mixed().matrix(),
        &DensityMatrix::from_bloch(v).unwrap().matrix(),
    )
    .unwrap();
    assert!((lhs - SQRT2_LN2).abs() <= 1e-5, "lhs {lhs}");
    assert!((rhs - DELTA_MIXED_TO_06).abs() <= 1e-5, "rhs {rhs}");
    assert!(lhs <= rhs + 1e-12);
    println!("PASS sqrt(2) comparison: 1e5 pairs, witness {lhs:.6} <= {rhs:.6}");
}

#[test]
fn gamma_identity_and_boost_agree_with_the_addition() {
    // gamma composition at 1e-9 relative; boost-extracted sums entrywise at
    // 1e-12 for radii up to 0.9.
    let gamma_report = run_suite("gamma_identity", &cfg(10_000)).unwrap();
    assert_clean(&gamma_report);
    let boost_report = run_suite("boost", &cfg(10_000)).unwrap();
    assert_clean(&boost_report);
    println!(
        "PASS gamma identity and boost: residuals {:.3e} / {:.3e} of tolerance",
        gamma_report.max_residual, boost_report.max_residual
    );
}

#[test]
fn quadrature_lengths_match_the_closed_form() {
    // Geodesic quadrature at n = 1024 within 1e-6 of the distance and
    // perturbed paths no shorter than distance - 1e-9, 100 pairs each,
    // inside 30 seconds.
    let report = run_suite("pathlength", &cfg(100)).unwrap();
    assert_clean(&report);
    assert!(report.elapsed_ms < 30_000.0, "took {} ms", report.elapsed_ms);
    println!("PASS path lengths: 100 geodesic + 100 perturbed, max residual {:.3e}", report.max_residual);
}

#[test]
fn printed_inverse_coefficient_is_reproduced() {
    // The single-gamma coefficient gives trace 1.25 at |u| = 0.6 (exactly,
    // to 1e-12) where the squared-gamma form gives a unit-trace state with
    // the negated Bloch vector; the CLI flag demonstrates it end to end.
    let report = run_suite("erratum", &cfg(10_000)).unwrap();
    assert_clean(&report);

    let rho = DensityMatrix::from_bloch(BlochVector::new(0.0, 0.0, 0.6)).unwrap();
    let printed = rho.inverse_printed_form().unwrap();
    assert!((printed.trace() - 1.25).abs() <= 1e-12);
    assert!(printed.max_abs_diff(&Hermitian2::diagonal(0.25, 1.0)) <= 1e-12);
    let corrected = rho.inverse().unwrap();
    assert_eq!(corrected.bloch(), BlochVector::new(0.0, 0.0, -0.6));
    assert_eq!(corrected.matrix().trace(), 1.0);

    let out = Command::new(env!("CARGO_BIN_EXE_gyroqubit"))
        .args(["inv", "0,0,0.6", "--printed-eqn"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let record: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let printed_trace = record["printed_trace"].as_f64().unwrap();
    assert!((printed_trace - 1.25).abs() <= 1e-12);
    assert_eq!(record["bloch"][2].as_f64().unwrap(), -0.6);
    println!("PASS printed inverse: trace {printed_trace} vs corrected trace 1");
}

#[test]
fn full_verification_is_byte_deterministic() {
    // `verify --suite all --seed 42 --trials 1000` emits byte-identical
    // stdout across runs.
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_gyroqubit"))
            .args(["verify", "--suite", "all", "--seed", "42", "--trials", "1000"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert!(first.status.success(), "exit {:?}", first.status);
    assert_eq!(first.stdout, second.stdout, "reports differ between runs");
    // One line per suite plus the summary.
    let lines: Vec<&str> = std::str::from_utf8(&first.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 10);
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["violations"].as_u64(), Some(0));
    }
    println!("PASS determinism: {} byte-identical report lines", lines.len());
}
