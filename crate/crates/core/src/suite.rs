//! Executable checks for the characterization theorems, plus structured
//! random generators and a seeded trial driver.
//!
//! Each property has two independent routes: a definitional test evaluating
//! the defining identity on the matrix itself, and a structural test
//! evaluating block conditions on the Hartwig-Spindelböck data. The theorems
//! assert these agree; the driver fuzzes that claim.
//!
//! Disagreements are classified with a hysteresis band: when any involved
//! residual lies within a decade of the equality tolerance, the trial is
//! recorded as indeterminate rather than a violation, separating genuine
//! counterexamples from floating-point boundary flicker.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complexmat::ComplexMatrix;
use crate::hs::{hs_decompose, HsDecomposition};
use crate::inverse::{group_inverse_essential, ndmpi_svd};
use crate::matrix::{eq_threshold, residual, DualMatrix, ToleranceConfig};
use crate::scalar::DualReal;
use crate::svd::essential_part;
use crate::{Error, Result};

/// The six properties of the main characterization theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropertyId {
    Hermitian,
    Normal,
    NewDualEp,
    AdjointEqNdmpi,
    NdmpiIdempotent,
    NdmpiAdjointCommute,
}

impl PropertyId {
    pub const ALL: [PropertyId; 6] = [
        PropertyId::Hermitian,
        PropertyId::Normal,
        PropertyId::NewDualEp,
        PropertyId::AdjointEqNdmpi,
        PropertyId::NdmpiIdempotent,
        PropertyId::NdmpiAdjointCommute,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            PropertyId::Hermitian => "hermitian",
            PropertyId::Normal => "normal",
            PropertyId::NewDualEp => "new_dual_ep",
            PropertyId::AdjointEqNdmpi => "adjoint_eq_ndmpi",
            PropertyId::NdmpiIdempotent => "ndmpi_idempotent",
            PropertyId::NdmpiAdjointCommute => "ndmpi_adjoint_commute",
        }
    }

    pub fn parse(s: &str) -> Option<PropertyId> {
        PropertyId::ALL.iter().copied().find(|p| p.label() == s)
    }
}

/// Result of one property test: the verdict plus the residual of every
/// condition that fed it.
#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub holds: bool,
    pub residuals: Vec<(String, f64)>,
}

impl PropertyCheck {
    fn from_residuals(residuals: Vec<(String, f64)>, tol: &ToleranceConfig) -> Self {
        let holds = residuals.iter().all(|(_, r)| *r <= eq_threshold(tol));
        PropertyCheck { holds, residuals }
    }
}

/// Evaluate the defining identity of a property directly on the matrix.
pub fn definitional_check(
    a: &DualMatrix,
    p: PropertyId,
    tol: &ToleranceConfig,
) -> Result<PropertyCheck> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let residuals = match p {
        PropertyId::Hermitian => vec![("adjoint_eq_self".into(), residual(&a.adjoint(), a))],
        PropertyId::Normal => vec![(
            "gram_commutes".into(),
            residual(&(a * &a.adjoint()), &(&a.adjoint() * a)),
        )],
        PropertyId::NewDualEp => {
            let x = ndmpi_svd(a, tol)?;
            vec![("ndmpi_commutes".into(), residual(&(a * &x), &(&x * a)))]
        }
        PropertyId::AdjointEqNdmpi => {
            let x = ndmpi_svd(a, tol)?;
            vec![("adjoint_eq_ndmpi".into(), residual(&a.adjoint(), &x))]
        }
        PropertyId::NdmpiIdempotent => {
            let x = ndmpi_svd(a, tol)?;
            vec![("ndmpi_squared".into(), residual(&(&x * &x), &x))]
        }
        PropertyId::NdmpiAdjointCommute => {
            let x = ndmpi_svd(a, tol)?;
            vec![(
                "ndmpi_adjoint_commutes".into(),
                residual(&(&x * &a.adjoint()), &(&a.adjoint() * &x)),
            )]
        }
    };
    Ok(PropertyCheck::from_residuals(residuals, tol))
}

/// Boolean form of [`definitional_check`].
pub fn definitional_test(a: &DualMatrix, p: PropertyId, tol: &ToleranceConfig) -> Result<bool> {
    Ok(definitional_check(a, p, tol)?.holds)
}

/// Evaluate the block conditions of the characterization theorem on the HS
/// data.
pub fn structural_check(h: &HsDecomposition, p: PropertyId, tol: &ToleranceConfig) -> PropertyCheck {
    let r = h.r();
    let nr = h.dim() - r;
    let s1 = h.sigma1_matrix();
    let k = h.k_block();
    let l = h.l_block();
    let sigma2d = ComplexMatrix::from_fn(nr, nr, |i, j| {
        if i == j {
            Complex64::new(h.sigma2()[i].dual_part, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let m_s = h.m_block().standard();
    let n_s = h.n_block().standard();
    let l_zero = DualMatrix::zeros(r, nr);

    let residuals = match p {
        PropertyId::Hermitian => {
            // K̂*Σ̂₁ = Σ̂₁K̂, N_s*Σ_{2d} = Σ_{2d}N_s, L̂ = (Σ_{1s}^{-1}M_s*Σ_{2d})ε
            let s1_inv_std = ComplexMatrix::from_fn(r, r, |i, j| {
                if i == j {
                    Complex64::new(1.0 / h.sigma1()[i].std_part, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            let l_target = DualMatrix::new(
                ComplexMatrix::zeros(r, nr),
                s1_inv_std.mul(&m_s.adjoint()).mul(&sigma2d),
            )
            .expect("conformal block");
            vec![
                ("k_adj_sigma1_commutes".into(), residual(&(&k.adjoint() * &s1), &(&s1 * k))),
                ("n_adj_sigma2d_commutes".into(), c_residual(&n_s.adjoint().mul(&sigma2d), &sigma2d.mul(n_s))),
                ("l_is_coupling_term".into(), residual(l, &l_target)),
            ]
        }
        PropertyId::NewDualEp => vec![("l_zero".into(), residual(l, &l_zero))],
        PropertyId::Normal => vec![
            ("l_zero".into(), residual(l, &l_zero)),
            ("sigma1_k_commutes".into(), residual(&(&s1 * k), &(k * &s1))),
        ],
        PropertyId::AdjointEqNdmpi => vec![
            ("sigma2d_m_zero".into(), c_norm_residual(&sigma2d.mul(m_s))),
            ("sigma2d_n_zero".into(), c_norm_residual(&sigma2d.mul(n_s))),
            ("sigma1_is_identity".into(), residual(&s1, &DualMatrix::identity(r))),
        ],
        PropertyId::NdmpiIdempotent => vec![("sigma1_eq_k".into(), residual(&s1, k))],
        PropertyId::NdmpiAdjointCommute => {
            let s1_sq = &s1 * &s1;
            vec![
                ("sigma2d_m_zero".into(), c_norm_residual(&sigma2d.mul(m_s))),
                (
                    "l_sigma2d_n_zero".into(),
                    c_norm_residual(&l.standard().mul(&sigma2d).mul(n_s)),
                ),
                ("sigma1sq_k_commutes".into(), residual(&(&s1_sq * k), &(k * &s1_sq))),
            ]
        }
    };
    PropertyCheck::from_residuals(residuals, tol)
}

/// Boolean form of [`structural_check`].
pub fn structural_test(h: &HsDecomposition, p: PropertyId, tol: &ToleranceConfig) -> bool {
    structural_check(h, p, tol).holds
}

fn c_residual(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.sub(b).frobenius_norm() / (1.0 + a.frobenius_norm().max(b.frobenius_norm()))
}

fn c_norm_residual(a: &ComplexMatrix) -> f64 {
    a.frobenius_norm() / (1.0 + a.frobenius_norm())
}

/// How a definitional/structural pair compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    Agree,
    Indeterminate,
    Violation,
}

fn in_band(res: f64, tol: &ToleranceConfig) -> bool {
    let thr = eq_threshold(tol);
    res >= thr / 10.0 && res <= thr * 10.0
}

/// Compare the two routes, applying the hysteresis band to disagreements.
pub fn classify_agreement(
    def: &PropertyCheck,
    structural: &PropertyCheck,
    tol: &ToleranceConfig,
) -> Agreement {
    if def.holds == structural.holds {
        return Agreement::Agree;
    }
    let any_banded = def
        .residuals
        .iter()
        .chain(structural.residuals.iter())
        .any(|(_, r)| in_band(*r, tol));
    if any_banded {
        Agreement::Indeterminate
    } else {
        Agreement::Violation
    }
}

/// Conditions of the two sufficient-condition theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SufficiencyId {
    /// `ÂÂÂ^N = Â*` implies Hermitian.
    HermitianCubeNdmpi,
    /// `ÂÂ*Â^N = Â` implies Hermitian.
    HermitianGramNdmpi,
    /// `ÂÂ*Â^N = Â*` implies normal.
    NormalGramNdmpi,
    /// `Â^NÂ*Â = Â*` implies normal.
    NormalNdmpiGram,
    /// `A_eÂ*A_e^# = Â*A_e^#A_e` implies normal.
    NormalEssentialGroupRight,
    /// `A_eÂ*A_e^# = A_e^#A_eÂ*` implies normal.
    NormalEssentialGroupLeft,
}

impl SufficiencyId {
    pub const HERMITIAN: [SufficiencyId; 2] =
        [SufficiencyId::HermitianCubeNdmpi, SufficiencyId::HermitianGramNdmpi];
    pub const NORMAL: [SufficiencyId; 4] = [
        SufficiencyId::NormalGramNdmpi,
        SufficiencyId::NormalNdmpiGram,
        SufficiencyId::NormalEssentialGroupRight,
        SufficiencyId::NormalEssentialGroupLeft,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            SufficiencyId::HermitianCubeNdmpi => "hermitian_aaan_adjoint",
            SufficiencyId::HermitianGramNdmpi => "hermitian_gram_ndmpi_self",
            SufficiencyId::NormalGramNdmpi => "normal_gram_ndmpi_adjoint",
            SufficiencyId::NormalNdmpiGram => "normal_ndmpi_gram_adjoint",
            SufficiencyId::NormalEssentialGroupRight => "normal_essential_group_right",
            SufficiencyId::NormalEssentialGroupLeft => "normal_essential_group_left",
        }
    }

    fn implied_property(&self) -> PropertyId {
        match self {
            SufficiencyId::HermitianCubeNdmpi | SufficiencyId::HermitianGramNdmpi => {
                PropertyId::Hermitian
            }
            _ => PropertyId::Normal,
        }
    }
}

/// Outcome of a sufficiency check. Conditions naming `A_e^#` are
/// inapplicable when the group inverse of the essential part does not exist.
#[derive(Debug, Clone)]
pub enum SufficiencyOutcome {
    Inapplicable,
    Applicable {
        premise: bool,
        conclusion: bool,
        premise_residual: f64,
        conclusion_residual: f64,
    },
}

/// Test one sufficient condition: does the premise identity hold, and does
/// the implied property hold?
pub fn sufficiency_test(
    a: &DualMatrix,
    id: SufficiencyId,
    tol: &ToleranceConfig,
) -> Result<SufficiencyOutcome> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let x = ndmpi_svd(a, tol)?;
    let adj = a.adjoint();
    let premise_residual = match id {
        SufficiencyId::HermitianCubeNdmpi => residual(&(&(a * a) * &x), &adj),
        SufficiencyId::HermitianGramNdmpi => residual(&(&(a * &adj) * &x), a),
        SufficiencyId::NormalGramNdmpi => residual(&(&(a * &adj) * &x), &adj),
        SufficiencyId::NormalNdmpiGram => residual(&(&(&x * &adj) * a), &adj),
        SufficiencyId::NormalEssentialGroupRight | SufficiencyId::NormalEssentialGroupLeft => {
            let h = hs_decompose(a, tol)?;
            let report = group_inverse_essential(&h, tol);
            let Some(g) = report.value else {
                return Ok(SufficiencyOutcome::Inapplicable);
            };
            let e = h.essential();
            match id {
                SufficiencyId::NormalEssentialGroupRight => {
                    residual(&(&(&e * &adj) * &g), &(&(&adj * &g) * &e))
                }
                _ => residual(&(&(&e * &adj) * &g), &(&(&g * &e) * &adj)),
            }
        }
    };
    let conclusion = definitional_check(a, id.implied_property(), tol)?;
    let conclusion_residual = conclusion.residuals.iter().map(|(_, r)| *r).fold(0.0, f64::max);
    Ok(SufficiencyOutcome::Applicable {
        premise: premise_residual <= eq_threshold(tol),
        conclusion: conclusion.holds,
        premise_residual,
        conclusion_residual,
    })
}

/// The three equivalence theorems driven by [`equivalence_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceId {
    /// Seven equivalent statements of normality.
    Normality,
    /// Fifteen equivalent statements of the new dual EP property.
    NewDualEp,
    /// For EP matrices: normal iff `Σ̂₁K̂ = K̂Σ̂₁`.
    EpNormal,
}

impl EquivalenceId {
    pub fn label(&self) -> &'static str {
        match self {
            EquivalenceId::Normality => "normal-equiv",
            EquivalenceId::NewDualEp => "ndep-equiv",
            EquivalenceId::EpNormal => "ep-normal",
        }
    }
}

/// One condition in an equivalence report.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionResult {
    pub label: String,
    pub applicable: bool,
    pub holds: Option<bool>,
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Verdict {
    Consistent,
    Violation { holds: String, fails: String },
}

/// Evaluation of every condition of an equivalence theorem on one matrix.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub theorem: String,
    pub conditions: Vec<ConditionResult>,
    pub verdict: Verdict,
    pub indeterminate: bool,
}

fn condition(label: &str, res: f64, tol: &ToleranceConfig) -> ConditionResult {
    ConditionResult {
        label: label.into(),
        applicable: true,
        holds: Some(res <= eq_threshold(tol)),
        residual: Some(res),
    }
}

fn inapplicable(label: &str) -> ConditionResult {
    ConditionResult { label: label.into(), applicable: false, holds: None, residual: None }
}

/// Evaluate every condition of the named theorem and compare the applicable
/// ones. Conditions referencing `A_e^#` are inapplicable when it does not
/// exist.
pub fn equivalence_suite(
    a: &DualMatrix,
    id: EquivalenceId,
    tol: &ToleranceConfig,
) -> Result<EquivalenceReport> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let conditions = match id {
        EquivalenceId::Normality => normality_conditions(a, tol)?,
        EquivalenceId::NewDualEp => ndep_conditions(a, tol)?,
        EquivalenceId::EpNormal => ep_normal_conditions(a, tol)?,
    };
    let applicable: Vec<&ConditionResult> = conditions.iter().filter(|c| c.applicable).collect();
    let any_true = applicable.iter().any(|c| c.holds == Some(true));
    let any_false = applicable.iter().any(|c| c.holds == Some(false));
    let (verdict, indeterminate) = if any_true && any_false {
        let banded = applicable.iter().any(|c| c.residual.is_some_and(|r| in_band(r, tol)));
        if banded {
            (Verdict::Consistent, true)
        } else {
            let holds = applicable.iter().find(|c| c.holds == Some(true)).unwrap();
            let fails = applicable.iter().find(|c| c.holds == Some(false)).unwrap();
            (
                Verdict::Violation {
                    holds: holds.label.clone(),
                    fails: fails.label.clone(),
                },
                false,
            )
        }
    } else {
        (Verdict::Consistent, false)
    };
    Ok(EquivalenceReport { theorem: id.label().into(), conditions, verdict, indeterminate })
}

fn normality_conditions(a: &DualMatrix, tol: &ToleranceConfig) -> Result<Vec<ConditionResult>> {
    let x = ndmpi_svd(a, tol)?;
    let adj = a.adjoint();
    let e = essential_part(a, tol)?;
    let h = hs_decompose(a, tol)?;
    let group = group_inverse_essential(&h, tol).value;

    let mut out = Vec::new();
    out.push(condition(
        "i_normal",
        residual(&(a * &adj), &(&adj * a)),
        tol,
    ));
    match &group {
        Some(g) => {
            out.push(condition("ii_adj_ge_commute", residual(&(&adj * g), &(g * &adj)), tol));
        }
        None => out.push(inapplicable("ii_adj_ge_commute")),
    }
    out.push(condition(
        "iii_e_adj_ndmpi",
        residual(&(&(&e * &adj) * &x), &(&(&x * &e) * &adj)),
        tol,
    ));
    match &group {
        Some(g) => {
            out.push(condition(
                "iv_e_ge_adj",
                residual(&(&(&e * g) * &adj), &(&(g * &adj) * &e)),
                tol,
            ));
            out.push(condition(
                "v_gram_ge_commute",
                residual(&(&(&adj * a) * g), &(g * &(&adj * a))),
                tol,
            ));
            out.push(condition(
                "vi_adj_ndmpi_ge",
                residual(&(&(&adj * &x) * g), &(g * &(&adj * &x))),
                tol,
            ));
            out.push(condition(
                "vii_adj_ge_ndmpi",
                residual(&(&(&adj * g) * &x), &(&(&x * &adj) * g)),
                tol,
            ));
        }
        None => {
            out.push(inapplicable("iv_e_ge_adj"));
            out.push(inapplicable("v_gram_ge_commute"));
            out.push(inapplicable("vi_adj_ndmpi_ge"));
            out.push(inapplicable("vii_adj_ge_ndmpi"));
        }
    }
    Ok(out)
}

fn ndep_conditions(a: &DualMatrix, tol: &ToleranceConfig) -> Result<Vec<ConditionResult>> {
    let x = ndmpi_svd(a, tol)?;
    let adj = a.adjoint();
    let h = hs_decompose(a, tol)?;
    let group = group_inverse_essential(&h, tol).value;

    let mut out = Vec::new();
    out.push(condition("i_new_dual_ep", residual(&(a * &x), &(&x * a)), tol));
    out.push(condition(
        "ii_a_ndmpi_adj",
        residual(&(&(a * &x) * &adj), &(&(&adj * a) * &x)),
        tol,
    ));
    out.push(condition(
        "iii_adj_ndmpi_a",
        residual(&(&(&adj * &x) * a), &(&(&x * a) * &adj)),
        tol,
    ));
    let xx = &x * &x;
    match &group {
        Some(g) => {
            let xg = &x * g;
            let gx = g * &x;
            let gg = g * g;
            out.push(condition("iv_xx_eq_xg", residual(&xx, &xg), tol));
            out.push(condition("v_xx_eq_gx", residual(&xx, &gx), tol));
            out.push(condition("vi_xx_eq_gg", residual(&xx, &gg), tol));
            out.push(condition("vii_gx_eq_gg", residual(&gx, &gg), tol));
            out.push(condition("viii_xg_eq_gg", residual(&xg, &gg), tol));
            out.push(condition("ix_xg_eq_gx", residual(&xg, &gx), tol));
            out.push(condition("x_xxg_eq_xgx", residual(&(&xx * g), &(&xg * &x)), tol));
            out.push(condition("xi_xxg_eq_gxx", residual(&(&xx * g), &(g * &xx)), tol));
            out.push(condition("xii_xgx_eq_gxx", residual(&(&xg * &x), &(g * &xx)), tol));
            out.push(condition("xiii_xgg_eq_gxg", residual(&(&xg * g), &(&gx * g)), tol));
            out.push(condition("xiv_xgg_eq_ggx", residual(&(&xg * g), &(&gg * &x)), tol));
            out.push(condition("xv_ggx_eq_gxg", residual(&(&gg * &x), &(&gx * g)), tol));
        }
        None => {
            for label in [
                "iv_xx_eq_xg",
                "v_xx_eq_gx",
                "vi_xx_eq_gg",
                "vii_gx_eq_gg",
                "viii_xg_eq_gg",
                "ix_xg_eq_gx",
                "x_xxg_eq_xgx",
                "xi_xxg_eq_gxx",
                "xii_xgx_eq_gxx",
                "xiii_xgg_eq_gxg",
                "xiv_xgg_eq_ggx",
                "xv_ggx_eq_gxg",
            ] {
                out.push(inapplicable(label));
            }
        }
    }
    Ok(out)
}

/// For EP matrices (zero upper-right block): normal iff `Σ̂₁K̂ = K̂Σ̂₁`.
/// Both conditions are inapplicable when the input is not EP.
fn ep_normal_conditions(a: &DualMatrix, tol: &ToleranceConfig) -> Result<Vec<ConditionResult>> {
    let h = hs_decompose(a, tol)?;
    let ep = structural_check(&h, PropertyId::NewDualEp, tol);
    if !ep.holds {
        return Ok(vec![inapplicable("i_normal"), inapplicable("ii_sigma1_k_commute")]);
    }
    let s1 = h.sigma1_matrix();
    let k = h.k_block();
    Ok(vec![
        condition("i_normal", residual(&(a * &a.adjoint()), &(&a.adjoint() * a)), tol),
        condition("ii_sigma1_k_commute", residual(&(&s1 * k), &(k * &s1)), tol),
    ])
}

// ── Structured random generators ────────────────────────────────────

/// Generator families. Each kind satisfies its defining identity by
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    General,
    Hermitian,
    Normal,
    NewDualEp,
    DualUnitary,
    InvertibleStd,
    PureInfinitesimal,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 7] = [
        MatrixKind::General,
        MatrixKind::Hermitian,
        MatrixKind::Normal,
        MatrixKind::NewDualEp,
        MatrixKind::DualUnitary,
        MatrixKind::InvertibleStd,
        MatrixKind::PureInfinitesimal,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            MatrixKind::General => "general",
            MatrixKind::Hermitian => "hermitian",
            MatrixKind::Normal => "normal",
            MatrixKind::NewDualEp => "new_dual_ep",
            MatrixKind::DualUnitary => "dual_unitary",
            MatrixKind::InvertibleStd => "invertible_std",
            MatrixKind::PureInfinitesimal => "pure_infinitesimal",
        }
    }
}

/// Deterministic generator request: same config, same matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub kind: MatrixKind,
    pub n: usize,
    pub seed: u64,
}

fn rand_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn random_complex_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            out[(i, j)] = rand_complex(rng);
        }
    }
    out
}

fn hermitian_of(g: &ComplexMatrix) -> ComplexMatrix {
    g.add(&g.adjoint()).scale(Complex64::new(0.5, 0.0))
}

fn skew_hermitian_of(g: &ComplexMatrix) -> ComplexMatrix {
    g.sub(&g.adjoint()).scale(Complex64::new(0.5, 0.0))
}

/// Modified Gram-Schmidt orthonormalization of a random matrix; two passes
/// keep the result unitary to machine precision.
fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let mut q = random_complex_matrix(rng, n, n);
    for j in 0..n {
        for _ in 0..2 {
            for i in 0..j {
                let mut dot = Complex64::new(0.0, 0.0);
                for row in 0..n {
                    dot += q[(row, i)].conj() * q[(row, j)];
                }
                for row in 0..n {
                    let qi = q[(row, i)];
                    q[(row, j)] -= dot * qi;
                }
            }
        }
        let norm: f64 = (0..n).map(|row| q[(row, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            // essentially impossible for random input; restart the column
            for row in 0..n {
                q[(row, j)] = if row == j { Complex64::new(1.0, 0.0) } else { rand_complex(rng) };
            }
            return random_unitary(rng, n);
        }
        for row in 0..n {
            q[(row, j)] /= norm;
        }
    }
    q
}

fn random_dual_unitary(rng: &mut ChaCha8Rng, n: usize) -> DualMatrix {
    let u_s = random_unitary(rng, n);
    let skew = skew_hermitian_of(&random_complex_matrix(rng, n, n));
    let u_d = u_s.mul(&skew);
    DualMatrix::new(u_s, u_d).expect("square parts")
}

/// Draw a structured random dual matrix. Deterministic for a fixed config.
pub fn random_dual_matrix(cfg: &GeneratorConfig) -> DualMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.n;
    match cfg.kind {
        MatrixKind::General => DualMatrix::new(
            random_complex_matrix(&mut rng, n, n),
            random_complex_matrix(&mut rng, n, n),
        )
        .expect("square parts"),
        MatrixKind::Hermitian => DualMatrix::new(
            hermitian_of(&random_complex_matrix(&mut rng, n, n)),
            hermitian_of(&random_complex_matrix(&mut rng, n, n)),
        )
        .expect("square parts"),
        MatrixKind::Normal => {
            // Û D̂ Û* with D̂ dual diagonal: diagonal dual scalars commute
            // with their conjugates, so the result is exactly normal.
            let u = random_dual_unitary(&mut rng, n);
            let mut d = DualMatrix::zeros(n, n);
            for i in 0..n {
                let s = rand_complex(&mut rng);
                let dd = rand_complex(&mut rng);
                d.set(i, i, crate::scalar::DualComplex::new(s, dd));
            }
            &(&u * &d) * &u.adjoint()
        }
        MatrixKind::NewDualEp => {
            // HS form with L̂ = O, M̂ = O, K̂ dual unitary, reconstructed.
            let r = rng.random_range(1..=n);
            let u = random_dual_unitary(&mut rng, n);
            let k = random_dual_unitary(&mut rng, r);
            let nb = random_dual_unitary(&mut rng, n - r);
            let mut s1: Vec<DualReal> = (0..r)
                .map(|_| DualReal::new(rng.random_range(0.5..2.5), rng.random_range(-1.0..1.0)))
                .collect();
            s1.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let mut s2: Vec<DualReal> = (0..n - r)
                .map(|_| {
                    let keep = rng.random_range(0..4u8) > 0;
                    DualReal::new(0.0, if keep { rng.random_range(0.1..1.0) } else { 0.0 })
                })
                .collect();
            s2.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let s1m = DualMatrix::diag(r, r, &s1);
            let s2m = DualMatrix::diag(n - r, n - r, &s2);
            let core = DualMatrix::from_blocks(
                &(&s1m * &k),
                &DualMatrix::zeros(r, n - r),
                &DualMatrix::zeros(n - r, r),
                &(&s2m * &nb),
            );
            &(&u * &core) * &u.adjoint()
        }
        MatrixKind::DualUnitary => random_dual_unitary(&mut rng, n),
        MatrixKind::InvertibleStd => {
            let u = random_unitary(&mut rng, n);
            let v = random_unitary(&mut rng, n);
            let mut vals: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..2.5)).collect();
            vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let std = u.mul(&ComplexMatrix::diagonal(n, &vals)).mul(&v.adjoint());
            DualMatrix::new(std, random_complex_matrix(&mut rng, n, n)).expect("square parts")
        }
        MatrixKind::PureInfinitesimal => DualMatrix::new(
            ComplexMatrix::zeros(n, n),
            random_complex_matrix(&mut rng, n, n),
        )
        .expect("square parts"),
    }
}

// ── Trial driver ────────────────────────────────────────────────────

/// Theorems runnable through [`run_trials`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    /// Six-property characterization: definitional vs structural.
    Characterization,
    /// Two sufficient conditions for Hermitian.
    HermitianSufficiency,
    /// Four sufficient conditions for normality.
    NormalSufficiency,
    /// Seven-way normality equivalence.
    NormalEquivalence,
    /// Fifteen-way new-dual-EP equivalence.
    NewDualEpEquivalence,
    /// EP matrices: normal iff `Σ̂₁K̂ = K̂Σ̂₁`.
    EpNormal,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::Characterization,
        TheoremId::HermitianSufficiency,
        TheoremId::NormalSufficiency,
        TheoremId::NormalEquivalence,
        TheoremId::NewDualEpEquivalence,
        TheoremId::EpNormal,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            TheoremId::Characterization => "char",
            TheoremId::HermitianSufficiency => "suff-hermitian",
            TheoremId::NormalSufficiency => "suff-normal",
            TheoremId::NormalEquivalence => "normal-equiv",
            TheoremId::NewDualEpEquivalence => "ndep-equiv",
            TheoremId::EpNormal => "ep-normal",
        }
    }

    pub fn parse(s: &str) -> Option<TheoremId> {
        TheoremId::ALL.iter().copied().find(|t| t.label() == s)
    }

    fn kinds(&self) -> &'static [MatrixKind] {
        match self {
            // EP-focused mix: conditions are vacuous on most non-EP inputs
            TheoremId::EpNormal => &[
                MatrixKind::NewDualEp,
                MatrixKind::Normal,
                MatrixKind::DualUnitary,
                MatrixKind::General,
            ],
            _ => &MatrixKind::ALL,
        }
    }
}

/// One recorded violation, with everything needed to replay it.
#[derive(Debug, Clone, Serialize)]
pub struct ViolationRecord {
    pub trial: usize,
    pub seed: u64,
    pub size: usize,
    pub kind: String,
    pub detail: String,
}

/// Aggregate outcome of a trial run.
#[derive(Debug, Clone, Serialize)]
pub struct TrialSummary {
    pub theorem: String,
    pub trials: usize,
    /// Individual comparisons or conditions evaluated.
    pub checks: usize,
    pub passes: usize,
    pub indeterminate: usize,
    pub inapplicable: usize,
    pub violations: Vec<ViolationRecord>,
}

impl TrialSummary {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Per-trial seed derived from (master seed, trial index) so trials are
/// order-independent and reproducible.
pub fn trial_seed(master_seed: u64, trial: usize) -> u64 {
    splitmix64(master_seed ^ splitmix64(trial as u64 + 1))
}

/// Run `trials` seeded checks of a theorem over matrices whose sizes cycle
/// through `sizes` and whose kinds cycle through the theorem's generator mix.
pub fn run_trials(
    theorem: TheoremId,
    trials: usize,
    sizes: &[usize],
    master_seed: u64,
    tol: &ToleranceConfig,
) -> Result<TrialSummary> {
    assert!(!sizes.is_empty(), "at least one size");
    let kinds = theorem.kinds();
    let mut summary = TrialSummary {
        theorem: theorem.label().into(),
        trials,
        checks: 0,
        passes: 0,
        indeterminate: 0,
        inapplicable: 0,
        violations: Vec::new(),
    };

    for trial in 0..trials {
        let seed = trial_seed(master_seed, trial);
        let kind = kinds[trial % kinds.len()];
        let size = sizes[trial % sizes.len()];
        let cfg = GeneratorConfig { kind, n: size, seed };
        let a = random_dual_matrix(&cfg);
        let record = |detail: String| ViolationRecord {
            trial,
            seed,
            size,
            kind: kind.label().into(),
            detail,
        };

        match theorem {
            TheoremId::Characterization => {
                let h = hs_decompose(&a, tol)?;
                for p in PropertyId::ALL {
                    summary.checks += 1;
                    let def = definitional_check(&a, p, tol)?;
                    let st = structural_check(&h, p, tol);
                    match classify_agreement(&def, &st, tol) {
                        Agreement::Agree => summary.passes += 1,
                        Agreement::Indeterminate => summary.indeterminate += 1,
                        Agreement::Violation => summary.violations.push(record(format!(
                            "property {}: definitional={} structural={}",
                            p.label(),
                            def.holds,
                            st.holds
                        ))),
                    }
                }
            }
            TheoremId::HermitianSufficiency | TheoremId::NormalSufficiency => {
                let ids: &[SufficiencyId] = if theorem == TheoremId::HermitianSufficiency {
                    &SufficiencyId::HERMITIAN
                } else {
                    &SufficiencyId::NORMAL
                };
                for &id in ids {
                    summary.checks += 1;
                    match sufficiency_test(&a, id, tol)? {
                        SufficiencyOutcome::Inapplicable => summary.inapplicable += 1,
                        SufficiencyOutcome::Applicable {
                            premise,
                            conclusion,
                            premise_residual,
                            conclusion_residual,
                        } => {
                            if premise && !conclusion {
                                if in_band(premise_residual, tol)
                                    || in_band(conclusion_residual, tol)
                                {
                                    summary.indeterminate += 1;
                                } else {
                                    summary.violations.push(record(format!(
                                        "condition {} held but the implied property failed",
                                        id.label()
                                    )));
                                }
                            } else {
                                summary.passes += 1;
                            }
                        }
                    }
                }
            }
            TheoremId::NormalEquivalence | TheoremId::NewDualEpEquivalence | TheoremId::EpNormal => {
                let id = match theorem {
                    TheoremId::NormalEquivalence => EquivalenceId::Normality,
                    TheoremId::NewDualEpEquivalence => EquivalenceId::NewDualEp,
                    _ => EquivalenceId::EpNormal,
                };
                summary.checks += 1;
                let report = equivalence_suite(&a, id, tol)?;
                if report.conditions.iter().all(|c| !c.applicable) {
                    summary.inapplicable += 1;
                } else if report.indeterminate {
                    summary.indeterminate += 1;
                } else {
                    match report.verdict {
                        Verdict::Consistent => summary.passes += 1,
                        Verdict::Violation { holds, fails } => summary
                            .violations
                            .push(record(format!("\"{holds}\" holds but \"{fails}\" fails"))),
                    }
                }
            }
        }
    }
    Ok(summary)
}
