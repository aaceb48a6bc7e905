//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test -p dualmat-cli --test acceptance -- --nocapture`
//! to see the per-criterion lines.

mod corpus;
mod oracle;

use std::process::Command;
use std::time::Instant;

use dualmat::matrix::residual;
use dualmat::svd::dual_unitary_residual;
use dualmat::{
    dmpgi, dual_svd, hs_decompose, mpdgi, ndmpi_hs, ndmpi_svd, run_trials, verify_inverse,
    ComplexMatrix, DualMatrix, InverseKind, TheoremId, ToleranceConfig,
};
use num_complex::Complex64;

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

const SVD_CORPUS_SIZE: usize = 1000;
const SVD_CORPUS_SEED: u64 = 0xD0A1_5EED;

#[test]
fn c1_dual_svd_reconstruction() {
    let start = Instant::now();
    for i in 0..SVD_CORPUS_SIZE {
        let a = corpus::corpus_matrix(i, 12, SVD_CORPUS_SEED);
        let svd = dual_svd(&a, &tol()).unwrap_or_else(|e| {
            panic!("matrix {i} ({}x{}): {e}", a.rows(), a.cols());
        });
        let recon = residual(&svd.reconstruct(), &a);
        assert!(recon <= 1e-8, "matrix {i}: reconstruction residual {recon:.3e}");
        let ur = dual_unitary_residual(svd.u());
        let vr = dual_unitary_residual(svd.v());
        assert!(ur <= 1e-9, "matrix {i}: U unitarity residual {ur:.3e}");
        assert!(vr <= 1e-9, "matrix {i}: V unitarity residual {vr:.3e}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "expected < 60 s, took {elapsed:?}");
    println!("criterion 1 (dual SVD reconstruction, {SVD_CORPUS_SIZE} matrices): PASS in {elapsed:?}");
}

#[test]
fn c2_ndmpi_defining_equations() {
    for i in 0..SVD_CORPUS_SIZE {
        let a = corpus::corpus_matrix(i, 12, SVD_CORPUS_SEED);
        let x = ndmpi_svd(&a, &tol()).unwrap();
        let report = verify_inverse(&a, &x, InverseKind::Ndmpi, &tol()).unwrap();
        for (label, res) in &report.residuals {
            assert!(*res <= 1e-8, "matrix {i}: {label} residual {res:.3e}");
        }
        if a.is_square() {
            let h = hs_decompose(&a, &tol()).unwrap();
            let x_hs = ndmpi_hs(&h);
            let diff = residual(&x, &x_hs);
            assert!(diff <= 1e-9, "matrix {i}: representations differ by {diff:.3e}");
        }
    }
    println!("criterion 2 (NDMPI defining equations + representation agreement): PASS");
}

#[test]
fn c3_hs_block_identities() {
    for i in 0..500 {
        let a = corpus::square_corpus_matrix(i, 16, 0xB10C_5EED);
        let h = hs_decompose(&a, &tol()).unwrap();
        let r = h.r();
        let nr = h.dim() - r;
        let kk_ll = h
            .k_block()
            .mul(&h.k_block().adjoint())
            .add(&h.l_block().mul(&h.l_block().adjoint()));
        let id_res = residual(&kk_ll, &DualMatrix::identity(r));
        assert!(id_res <= 1e-9, "matrix {i}: K̂K̂*+L̂L̂* residual {id_res:.3e}");
        let km_ln = h
            .k_block()
            .mul(&h.m_block().adjoint())
            .add(&h.l_block().mul(&h.n_block().adjoint()));
        let zero_res = residual(&km_ln, &DualMatrix::zeros(r, nr));
        assert!(zero_res <= 1e-9, "matrix {i}: K̂M̂*+L̂N̂* residual {zero_res:.3e}");
        let round = residual(&h.reconstruct(), &a);
        assert!(round <= 1e-8, "matrix {i}: round trip residual {round:.3e}");
    }
    println!("criterion 3 (HS block identities + round trip, 500 matrices): PASS");
}

#[test]
fn c4_characterization_biconditionals() {
    let trials = 504;
    let summary = run_trials(
        TheoremId::Characterization,
        trials,
        &[1, 2, 3, 4, 5, 6, 7, 8],
        0xC4A7,
        &tol(),
    )
    .unwrap();
    assert!(
        summary.violations.is_empty(),
        "violations outside the hysteresis band: {:?}",
        summary.violations
    );
    let max_indeterminate = trials / 50; // < 2% of trials
    assert!(
        summary.indeterminate < max_indeterminate.max(1),
        "indeterminate rate too high: {} of {trials} trials",
        summary.indeterminate
    );
    println!(
        "criterion 4 (characterization biconditionals, {} checks over {trials} trials, {} indeterminate): PASS",
        summary.checks, summary.indeterminate
    );
}

#[test]
fn c5_sufficiency_and_equivalence_suites() {
    for (theorem, seed) in [
        (TheoremId::HermitianSufficiency, 0x51u64),
        (TheoremId::NormalSufficiency, 0x52),
        (TheoremId::NormalEquivalence, 0x53),
        (TheoremId::NewDualEpEquivalence, 0x54),
        (TheoremId::EpNormal, 0x55),
    ] {
        let summary = run_trials(theorem, 200, &[2, 4, 6], seed, &tol()).unwrap();
        assert!(
            summary.violations.is_empty(),
            "{}: violations {:?}",
            summary.theorem,
            summary.violations
        );
    }
    println!("criterion 5 (sufficiency + equivalence suites, 200 trials each at n = 2,4,6): PASS");
}

/// The fixed entry alphabet {0, 1, −1, i, −i} as (re, im) integer pairs.
const ALPHABET: [(i64, i64); 5] = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)];

fn exact_pair_to_matrices(entries: &[(i64, i64)], rows: usize, cols: usize) -> (oracle::EMat, ComplexMatrix) {
    let mut exact = oracle::EMat::zeros(rows, cols);
    let mut float = ComplexMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let (re, im) = entries[i * cols + j];
            *exact.at_mut(i, j) = oracle::GRat::from_ints(re, im);
            float[(i, j)] = Complex64::new(re as f64, im as f64);
        }
    }
    (exact, float)
}

fn check_against_oracle(std_e: &[(i64, i64)], dual_e: &[(i64, i64)], n: usize, label: &str) {
    let (es, fs) = exact_pair_to_matrices(std_e, n, n);
    let (ed, fd) = exact_pair_to_matrices(dual_e, n, n);
    let exact = oracle::exact_ndmpi(&oracle::EDual { s: es, d: ed });
    let a = DualMatrix::new(fs, fd).unwrap();
    let x = ndmpi_svd(&a, &tol()).unwrap();
    for i in 0..n {
        for j in 0..n {
            let (ere, eim) = exact.s.at(j, i).to_f64();
            let got = x.standard()[(j, i)];
            let diff = (got - Complex64::new(ere, eim)).norm();
            assert!(diff <= 1e-10, "{label}: standard entry ({j},{i}) off by {diff:.3e}");
            let (ere, eim) = exact.d.at(j, i).to_f64();
            let got = x.dual()[(j, i)];
            let diff = (got - Complex64::new(ere, eim)).norm();
            assert!(diff <= 1e-10, "{label}: dual entry ({j},{i}) off by {diff:.3e}");
        }
    }
}

#[test]
#[allow(clippy::needless_range_loop)] // indices double as instance labels
fn c6_exact_arithmetic_oracle() {
    let mut instances = 0usize;

    // every 1x1 pair over the alphabet
    for &s in &ALPHABET {
        for &d in &ALPHABET {
            check_against_oracle(&[s], &[d], 1, &format!("1x1 s={s:?} d={d:?}"));
            instances += 1;
        }
    }

    // every 2x2 standard part over the alphabet, against four fixed duals
    let fixed_duals: [[(i64, i64); 4]; 4] = [
        [(0, 0), (0, 0), (0, 0), (0, 0)],
        [(1, 0), (0, 0), (0, 0), (1, 0)],
        [(0, 0), (1, 0), (0, 0), (0, 0)],
        [(0, 1), (0, 0), (0, 0), (0, -1)],
    ];
    for a0 in 0..ALPHABET.len() {
        for a1 in 0..ALPHABET.len() {
            for a2 in 0..ALPHABET.len() {
                for a3 in 0..ALPHABET.len() {
                    let std_e = [ALPHABET[a0], ALPHABET[a1], ALPHABET[a2], ALPHABET[a3]];
                    for (k, dual_e) in fixed_duals.iter().enumerate() {
                        check_against_oracle(
                            &std_e,
                            dual_e,
                            2,
                            &format!("2x2 #{a0}{a1}{a2}{a3} dual {k}"),
                        );
                        instances += 1;
                    }
                }
            }
        }
    }

    assert!(instances >= 2000, "need at least 2000 instances, ran {instances}");
    println!("criterion 6 (exact-arithmetic NDMPI oracle, {instances} instances): PASS");
}

#[test]
fn c7_inverse_coherence() {
    for i in 0..200 {
        let a = corpus::invertible_matrix(i, 10, 0xC7_5EED);
        let inv = a.inverse(&tol()).unwrap();
        let p = mpdgi(&a, &tol()).unwrap();
        let n = ndmpi_svd(&a, &tol()).unwrap();
        let d = dmpgi(&a, &tol()).unwrap();
        assert!(d.exists, "matrix {i}: DMPGI must exist for invertible standard parts");
        let dv = d.value.unwrap();
        for (label, other) in [("mpdgi", &p), ("ndmpi", &n), ("dmpgi", &dv)] {
            let diff = residual(&inv, other);
            assert!(diff <= 1e-9, "matrix {i}: inverse vs {label} differ by {diff:.3e}");
        }
    }

    // the diag(1,0…)+diag(0,1…)ε family: DMPGI never exists, NDMPI always does
    for n in 2..=5usize {
        let half = n / 2;
        let std = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j && i < half {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let dual = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j && i >= half {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let a = DualMatrix::new(std, dual).unwrap();
        let d = dmpgi(&a, &tol()).unwrap();
        assert!(!d.exists, "n={n}: DMPGI must not exist");
        let x = ndmpi_svd(&a, &tol()).unwrap();
        let report = verify_inverse(&a, &x, InverseKind::Ndmpi, &tol()).unwrap();
        assert!(report.exists, "n={n}: NDMPI must satisfy its equations");
    }
    println!("criterion 7 (inverse coherence, 200 invertible + nonexistence family): PASS");
}

// ── criterion 8: CLI golden files ───────────────────────────────────

struct GoldenCase {
    name: &'static str,
    args: &'static [&'static str],
    expected_exit: i32,
}

const FIXTURES: [&str; 3] =
    ["diag_infinitesimal.json", "nilpotent.json", "complex_invertible.json"];

fn golden_cases() -> Vec<GoldenCase> {
    vec![
        GoldenCase { name: "svd_diag", args: &["svd", "F0", "--check"], expected_exit: 0 },
        GoldenCase { name: "svd_nilpotent", args: &["svd", "F1", "--check"], expected_exit: 0 },
        GoldenCase { name: "svd_complex", args: &["svd", "F2", "--check"], expected_exit: 0 },
        GoldenCase { name: "hs_diag", args: &["hs", "F0"], expected_exit: 0 },
        GoldenCase { name: "hs_nilpotent", args: &["hs", "F1"], expected_exit: 0 },
        GoldenCase { name: "hs_complex", args: &["hs", "F2"], expected_exit: 0 },
        GoldenCase { name: "ndmpi_diag", args: &["ndmpi", "F0"], expected_exit: 0 },
        GoldenCase { name: "ndmpi_nilpotent", args: &["ndmpi", "F1"], expected_exit: 0 },
        GoldenCase { name: "ndmpi_complex", args: &["ndmpi", "F2"], expected_exit: 0 },
        GoldenCase { name: "mpdgi_diag", args: &["mpdgi", "F0"], expected_exit: 0 },
        GoldenCase { name: "mpdgi_nilpotent", args: &["mpdgi", "F1"], expected_exit: 0 },
        GoldenCase { name: "mpdgi_complex", args: &["mpdgi", "F2"], expected_exit: 0 },
        GoldenCase { name: "dmpgi_diag", args: &["dmpgi", "F0"], expected_exit: 1 },
        GoldenCase { name: "dmpgi_nilpotent", args: &["dmpgi", "F1"], expected_exit: 0 },
        GoldenCase { name: "dmpgi_complex", args: &["dmpgi", "F2"], expected_exit: 0 },
        GoldenCase { name: "dggi_diag", args: &["dggi", "F0"], expected_exit: 1 },
        GoldenCase { name: "dggi_nilpotent", args: &["dggi", "F1"], expected_exit: 1 },
        GoldenCase { name: "dggi_complex", args: &["dggi", "F2"], expected_exit: 0 },
        GoldenCase { name: "inv_diag", args: &["inv", "F0"], expected_exit: 1 },
        GoldenCase { name: "inv_nilpotent", args: &["inv", "F1"], expected_exit: 1 },
        GoldenCase { name: "inv_complex", args: &["inv", "F2"], expected_exit: 0 },
        GoldenCase { name: "groupess_diag", args: &["group-ess", "F0"], expected_exit: 0 },
        GoldenCase { name: "groupess_nilpotent", args: &["group-ess", "F1"], expected_exit: 1 },
        GoldenCase { name: "groupess_complex", args: &["group-ess", "F2"], expected_exit: 0 },
        GoldenCase { name: "check_diag", args: &["check", "F0"], expected_exit: 0 },
        GoldenCase { name: "check_nilpotent", args: &["check", "F1"], expected_exit: 0 },
        GoldenCase { name: "check_complex", args: &["check", "F2"], expected_exit: 0 },
        GoldenCase {
            name: "verify_char",
            args: &["verify", "char", "--trials", "10", "--size", "3", "--seed", "5"],
            expected_exit: 0,
        },
        GoldenCase {
            name: "svd_pretty_complex",
            args: &["svd", "F2", "--check", "--output", "pretty"],
            expected_exit: 0,
        },
    ]
}

fn resolve_args(args: &[&str]) -> Vec<String> {
    let base = format!("{}/tests/fixtures", env!("CARGO_MANIFEST_DIR"));
    args.iter()
        .map(|a| match *a {
            "F0" => format!("{base}/{}", FIXTURES[0]),
            "F1" => format!("{base}/{}", FIXTURES[1]),
            "F2" => format!("{base}/{}", FIXTURES[2]),
            other => other.to_string(),
        })
        .collect()
}

#[test]
fn c8_cli_golden_files() {
    let golden_dir = format!("{}/tests/golden", env!("CARGO_MANIFEST_DIR"));
    for case in golden_cases() {
        let output = Command::new(env!("CARGO_BIN_EXE_dualmat"))
            .args(resolve_args(case.args))
            .output()
            .expect("binary runs");
        let code = output.status.code().expect("exit code");
        assert_eq!(code, case.expected_exit, "{}: exit code (stderr: {})", case.name, String::from_utf8_lossy(&output.stderr));
        let golden_path = format!("{golden_dir}/{}.golden", case.name);
        let expected = std::fs::read(&golden_path)
            .unwrap_or_else(|e| panic!("{}: cannot read {golden_path}: {e}", case.name));
        assert_eq!(
            output.stdout, expected,
            "{}: stdout differs from golden file (got: {})",
            case.name,
            String::from_utf8_lossy(&output.stdout)
        );
        // determinism: a second run must produce identical bytes
        let again = Command::new(env!("CARGO_BIN_EXE_dualmat"))
            .args(resolve_args(case.args))
            .output()
            .expect("binary runs");
        assert_eq!(output.stdout, again.stdout, "{}: output must be byte-stable", case.name);
    }
    println!("criterion 8 (CLI golden files, {} cases): PASS", golden_cases().len());
}
