//! Command-line front end for dual complex matrix decompositions,
//! generalized inverses, property checks, and theorem fuzzing.
//!
//! Exit codes: 0 success; 1 nonexistence results (and verify violations);
//! 2 input or usage errors; 3 numerical failure.

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dualmat::svd::dual_unitary_residual;
use dualmat::{
    dggi, dmpgi, dual_svd, group_inverse_essential, hs_decompose, mpdgi, ndmpi_svd, run_trials,
    DualMatrix, Error as CoreError, InverseReport, MatrixClass, PropertyId, TheoremId,
    ToleranceConfig,
};

const EXIT_NONEXISTENT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "dualmat",
    about = "Dual complex matrix algebra: dual SVD, Hartwig-Spindelböck decomposition, generalized inverses",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    /// Compact machine-readable JSON (default)
    Json,
    /// Human-readable tables
    Pretty,
}

#[derive(Args)]
struct CommonOpts {
    /// Override both equality tolerances (absolute and relative)
    #[arg(long, value_name = "FLOAT")]
    tol: Option<f64>,
    /// Override the relative rank threshold
    #[arg(long, value_name = "FLOAT")]
    rank_tol: Option<f64>,
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    output: OutputMode,
}

impl CommonOpts {
    fn tolerances(&self) -> Result<ToleranceConfig, String> {
        let mut tol = ToleranceConfig::default();
        if let Some(t) = self.tol {
            if !t.is_finite() || t <= 0.0 {
                return Err("--tol must be strictly positive".into());
            }
            tol = tol.with_eq_tol(t);
        }
        if let Some(t) = self.rank_tol {
            if !t.is_finite() || t <= 0.0 {
                return Err("--rank-tol must be strictly positive".into());
            }
            tol = tol.with_rank_tol(t);
        }
        Ok(tol)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dual singular value decomposition
    Svd {
        /// Matrix file (JSON: rows, cols, standard, dual)
        input: String,
        /// Re-multiply the factors and report reconstruction residuals
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Hartwig-Spindelböck decomposition (square matrices)
    Hs {
        input: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// New dual Moore-Penrose inverse (exists for every dual matrix)
    Ndmpi {
        input: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Moore-Penrose dual generalized inverse formula A_s† − A_s†A_dA_s†ε
    Mpdgi {
        input: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Dual Moore-Penrose generalized inverse; reports nonexistence
    Dmpgi {
        input: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Dual group generalized inverse; reports nonexistence
    Dggi {
        input: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Dual inverse (square, invertible standard part)
    Inv {
        input: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Group inverse of the essential part
    GroupEss {
        input: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Class predicates and characterization properties of a matrix
    Check {
        input: String,
        /// Restrict to one property (hermitian, normal, new_dual_ep,
        /// adjoint_eq_ndmpi, ndmpi_idempotent, ndmpi_adjoint_commute)
        #[arg(long)]
        property: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Fuzz a theorem with seeded trials; nonzero exit on any violation
    Verify {
        /// Theorem id: char, suff-hermitian, suff-normal, normal-equiv,
        /// ndep-equiv, ep-normal
        theorem: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Matrix size used for every trial
        #[arg(long, default_value_t = 6)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn usage_err(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn core_failure(err: CoreError) -> Failure {
    let code = match err {
        CoreError::ConvergenceFailure
        | CoreError::DegenerateCoupling
        | CoreError::SelfCheckFailed(_) => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    };
    Failure { code, message: err.to_string() }
}

fn load_matrix(path: &str) -> Result<DualMatrix, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| usage_err(format!("cannot read {path}: {e}")))?;
    DualMatrix::from_json_str(&text).map_err(|e| usage_err(e.to_string()))
}

#[derive(Serialize)]
struct SvdPayload {
    r: usize,
    t: usize,
    sigma: Vec<dualmat::DualReal>,
    u: DualMatrix,
    v: DualMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    residuals: Option<BTreeMap<String, f64>>,
}

#[derive(Serialize)]
struct HsPayload {
    r: usize,
    sigma1: Vec<dualmat::DualReal>,
    sigma2: Vec<dualmat::DualReal>,
    u: DualMatrix,
    k: DualMatrix,
    l: DualMatrix,
    m: DualMatrix,
    n: DualMatrix,
}

#[derive(Serialize)]
struct NonexistentPayload {
    exists: bool,
    reason: String,
}

#[derive(Serialize)]
struct CheckPayload {
    classes: BTreeMap<String, bool>,
    properties: BTreeMap<String, bool>,
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Svd { input, check, common } => {
            let tol = common.tolerances().map_err(usage_err)?;
            let a = load_matrix(&input)?;
            let svd = dual_svd(&a, &tol).map_err(core_failure)?;
            let residuals = check.then(|| {
                let mut map = BTreeMap::new();
                map.insert(
                    "reconstruction".into(),
                    dualmat::matrix::residual(&svd.reconstruct(), &a),
                );
                map.insert("u_unitarity".into(), dual_unitary_residual(svd.u()));
                map.insert("v_unitarity".into(), dual_unitary_residual(svd.v()));
                map
            });
            let payload = SvdPayload {
                r: svd.r(),
                t: svd.t(),
                sigma: svd.sigma().to_vec(),
                u: svd.u().clone(),
                v: svd.v().clone(),
                residuals,
            };
            match common.output {
                OutputMode::Json => println!("{}", to_json(&payload)),
                OutputMode::Pretty => print_svd_pretty(&payload),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hs { input, common } => {
            let tol = common.tolerances().map_err(usage_err)?;
            let a = load_matrix(&input)?;
            let hs = hs_decompose(&a, &tol).map_err(core_failure)?;
            let payload = HsPayload {
                r: hs.r(),
                sigma1: hs.sigma1().to_vec(),
                sigma2: hs.sigma2().to_vec(),
                u: hs.u().clone(),
                k: hs.k_block().clone(),
                l: hs.l_block().clone(),
                m: hs.m_block().clone(),
                n: hs.n_block().clone(),
            };
            match common.output {
                OutputMode::Json => println!("{}", to_json(&payload)),
                OutputMode::Pretty => print_hs_pretty(&payload),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ndmpi { input, common } => {
            let tol = common.tolerances().map_err(usage_err)?;
            let a = load_matrix(&input)?;
            let x = ndmpi_svd(&a, &tol).map_err(core_failure)?;
            emit_matrix(&x, common.output);
            Ok(ExitCode::SUCCESS)
        }
        Command::Mpdgi { input, common } => {
            let tol = common.tolerances().map_err(usage_err)?;
            let a = load_matrix(&input)?;
            let x = mpdgi(&a, &tol).map_err(core_failure)?;
            emit_matrix(&x, common.output);
            Ok(ExitCode::SUCCESS)
        }
        Command::Dmpgi { input, common } => {
            let tol = common.tolerances().map_err(usage_err)?;
            let a = load_matrix(&input)?;
            let report = dmpgi(&a, &tol).map_err(core_failure)?;
            emit_report(&report, common.output)
        }
        Command::Dggi { input, common } => {
            let tol = common.tolerances().map_err(usage_err)?;
            let a = load_matrix(&input)?;
            let report = dggi(&a, &tol).map_err(core_failure)?;
            emit_report(&report, common.output)
        }
        Command::Inv { input, common } => {
            let tol = common.tolerances().map_err(usage_err)?;
            let a = load_matrix(&input)?;
            match a.inverse(&tol) {
                Ok(x) => {
                    emit_matrix(&x, common.output);
                    Ok(ExitCode::SUCCESS)
                }
                Err(CoreError::SingularStandardPart) => {
                    let payload = NonexistentPayload {
                        exists: false,
                        reason: "standard part is singular at the configured rank threshold"
                            .into(),
                    };
                    match common.output {
                        OutputMode::Json => println!("{}", to_json(&payload)),
                        OutputMode::Pretty => println!("no inverse: {}", payload.reason),
                    }
                    Ok(ExitCode::from(EXIT_NONEXISTENT))
                }
                Err(e) => Err(core_failure(e)),
            }
        }
        Command::GroupEss { input, common } => {
            let tol = common.tolerances().map_err(usage_err)?;
            let a = load_matrix(&input)?;
            let hs = hs_decompose(&a, &tol).map_err(core_failure)?;
            let report = group_inverse_essential(&hs, &tol);
            emit_report(&report, common.output)
        }
        Command::Check { input, property, common } => {
            let tol = common.tolerances().map_err(usage_err)?;
            let a = load_matrix(&input)?;
            let selected = match property {
                Some(name) => {
                    let p = PropertyId::parse(&name)
                        .ok_or_else(|| usage_err(format!("unknown property \"{name}\"")))?;
                    vec![p]
                }
                None => PropertyId::ALL.to_vec(),
            };
            let mut classes = BTreeMap::new();
            for (label, class) in [
                ("hermitian", MatrixClass::Hermitian),
                ("idempotent", MatrixClass::Idempotent),
                ("normal", MatrixClass::Normal),
                ("dual_unitary", MatrixClass::DualUnitary),
            ] {
                classes.insert(
                    label.to_string(),
                    a.is_class(class, &tol).map_err(|e| usage_err(e.to_string()))?,
                );
            }
            let mut properties = BTreeMap::new();
            for p in selected {
                let holds = dualmat::definitional_test(&a, p, &tol).map_err(core_failure)?;
                properties.insert(p.label().to_string(), holds);
            }
            let payload = CheckPayload { classes, properties };
            match common.output {
                OutputMode::Json => println!("{}", to_json(&payload)),
                OutputMode::Pretty => print_check_pretty(&payload),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { theorem, trials, size, seed, common } => {
            let tol = common.tolerances().map_err(usage_err)?;
            if trials == 0 {
                return Err(usage_err("--trials must be at least 1"));
            }
            if size == 0 {
                return Err(usage_err("--size must be at least 1"));
            }
            let id = TheoremId::parse(&theorem).ok_or_else(|| {
                usage_err(format!(
                    "unknown theorem \"{theorem}\" (expected one of: {})",
                    TheoremId::ALL.map(|t| t.label()).join(", ")
                ))
            })?;
            let summary = run_trials(id, trials, &[size], seed, &tol).map_err(core_failure)?;
            match common.output {
                OutputMode::Json => println!("{}", to_json(&summary)),
                OutputMode::Pretty => print_summary_pretty(&summary),
            }
            if summary.is_consistent() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_NONEXISTENT))
            }
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("payload serializes")
}

fn emit_matrix(x: &DualMatrix, mode: OutputMode) {
    match mode {
        OutputMode::Json => println!("{}", x.to_json_string()),
        OutputMode::Pretty => print_matrix_pretty(x),
    }
}

fn emit_report(report: &InverseReport, mode: OutputMode) -> Result<ExitCode, Failure> {
    match mode {
        OutputMode::Json => println!("{}", to_json(report)),
        OutputMode::Pretty => {
            println!("exists: {}", report.exists);
            for (label, res) in &report.residuals {
                println!("  {label}: {res:.3e}");
            }
            if let Some(value) = &report.value {
                print_matrix_pretty(value);
            }
        }
    }
    if report.exists {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_NONEXISTENT))
    }
}

fn fmt_complex(re: f64, im: f64) -> String {
    format!("{re:.6}{im:+.6}i")
}

fn print_matrix_pretty(x: &DualMatrix) {
    println!("standard part ({}x{}):", x.rows(), x.cols());
    for i in 0..x.rows() {
        let row: Vec<String> = (0..x.cols())
            .map(|j| {
                let z = x.standard()[(i, j)];
                fmt_complex(z.re, z.im)
            })
            .collect();
        println!("  [{}]", row.join(", "));
    }
    println!("dual part:");
    for i in 0..x.rows() {
        let row: Vec<String> = (0..x.cols())
            .map(|j| {
                let z = x.dual()[(i, j)];
                fmt_complex(z.re, z.im)
            })
            .collect();
        println!("  [{}]", row.join(", "));
    }
}

fn print_sigma_line(label: &str, sigma: &[dualmat::DualReal]) {
    let vals: Vec<String> =
        sigma.iter().map(|s| format!("{:.6}{:+.6}ε", s.std_part, s.dual_part)).collect();
    println!("{label}: [{}]", vals.join(", "));
}

fn print_svd_pretty(p: &SvdPayload) {
    println!("r = {}, t = {}", p.r, p.t);
    print_sigma_line("sigma", &p.sigma);
    println!("-- U --");
    print_matrix_pretty(&p.u);
    println!("-- V --");
    print_matrix_pretty(&p.v);
    if let Some(res) = &p.residuals {
        println!("-- residuals --");
        for (label, value) in res {
            println!("  {label}: {value:.3e}");
        }
    }
}

fn print_hs_pretty(p: &HsPayload) {
    println!("r = {}", p.r);
    print_sigma_line("sigma1", &p.sigma1);
    print_sigma_line("sigma2", &p.sigma2);
    for (label, m) in [("U", &p.u), ("K", &p.k), ("L", &p.l), ("M", &p.m), ("N", &p.n)] {
        println!("-- {label} --");
        print_matrix_pretty(m);
    }
}

fn print_check_pretty(p: &CheckPayload) {
    println!("classes:");
    for (label, holds) in &p.classes {
        println!("  {label}: {holds}");
    }
    println!("properties:");
    for (label, holds) in &p.properties {
        println!("  {label}: {holds}");
    }
}

fn print_summary_pretty(s: &dualmat::TrialSummary) {
    println!(
        "theorem {}: {} trials, {} checks, {} passes, {} indeterminate, {} inapplicable",
        s.theorem, s.trials, s.checks, s.passes, s.indeterminate, s.inapplicable
    );
    if s.violations.is_empty() {
        println!("verdict: consistent");
    } else {
        println!("verdict: {} violation(s)", s.violations.len());
        for v in &s.violations {
            println!(
                "  trial {} (seed {}, {}x{}, {}): {}",
                v.trial, v.seed, v.size, v.size, v.kind, v.detail
            );
        }
    }
}
