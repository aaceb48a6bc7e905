//! Generalized inverses of dual complex matrices.
//!
//! - NDMPI `Â^N`: exists for every dual matrix; satisfies
//!   `ÂX̂Â = A_e`, `X̂ÂX̂ = X̂`, with `ÂX̂` and `X̂Â` Hermitian. Two
//!   representations are provided: through the dual SVD and through the
//!   Hartwig-Spindelböck blocks.
//! - MPDGI `Â^P = A_s† − A_s† A_d A_s† ε`: always defined, not generally a
//!   Penrose inverse.
//! - DMPGI `Â†`: the four classical Penrose equations over dual matrices;
//!   may not exist.
//! - DGGI `Â^#`: the three group equations; square matrices only.
//! - Group inverse of the essential part `A_e^#` through the HS blocks.
//!
//! DMPGI and DGGI are decided by candidate-plus-verification: the closed-form
//! candidates are the unique solutions whenever solutions exist, so a failed
//! equation check certifies nonexistence at the working tolerance.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complexmat::{complex_group_inverse, complex_mp, ComplexMatrix};
use crate::hs::HsDecomposition;
use crate::matrix::{eq_threshold, DualMatrix, ToleranceConfig};
use crate::scalar::DualReal;
use crate::svd::{dual_svd, essential_part};
use crate::{Error, Result};

/// Which defining equation system to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseKind {
    /// `ÂX̂Â = A_e`, `X̂ÂX̂ = X̂`, `ÂX̂` and `X̂Â` Hermitian.
    Ndmpi,
    /// `ÂX̂Â = Â`, `X̂ÂX̂ = X̂`, `ÂX̂` and `X̂Â` Hermitian.
    Dmpgi,
    /// `ÂX̂Â = Â`, `X̂ÂX̂ = X̂`, `ÂX̂ = X̂Â`.
    Dggi,
    /// The three group equations for the essential part `A_e`.
    GroupEssential,
}

/// Outcome of computing or verifying a generalized inverse. `exists` is true
/// exactly when every recorded residual passes the equality tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct InverseReport {
    pub exists: bool,
    pub value: Option<DualMatrix>,
    /// Scale-normalized deviation per defining equation.
    pub residuals: BTreeMap<String, f64>,
}

impl InverseReport {
    fn from_residuals(
        value: DualMatrix,
        residuals: BTreeMap<String, f64>,
        tol: &ToleranceConfig,
    ) -> Self {
        let exists = residuals.values().all(|&r| r <= eq_threshold(tol));
        InverseReport { exists, value: exists.then_some(value), residuals }
    }

    fn nonexistent() -> Self {
        InverseReport { exists: false, value: None, residuals: BTreeMap::new() }
    }
}

/// NDMPI through the dual SVD: `Â^N = V̂ [Σ̂₁^{-1} O; O O] Û*`.
pub fn ndmpi_svd(a: &DualMatrix, tol: &ToleranceConfig) -> Result<DualMatrix> {
    let svd = dual_svd(a, tol)?;
    let recip: Vec<DualReal> = svd.sigma()[..svd.r()]
        .iter()
        .map(|s| s.recip().expect("appreciable singular value"))
        .collect();
    let core = DualMatrix::diag(a.cols(), a.rows(), &recip);
    Ok(&(svd.v() * &core) * &svd.u().adjoint())
}

/// NDMPI through the HS blocks: `Â^N = Û [K̂*Σ̂₁^{-1} O; L̂*Σ̂₁^{-1} O] Û*`.
pub fn ndmpi_hs(h: &HsDecomposition) -> DualMatrix {
    let r = h.r();
    let nr = h.dim() - r;
    let s1_inv: Vec<DualReal> = h
        .sigma1()
        .iter()
        .map(|s| s.recip().expect("appreciable singular value"))
        .collect();
    let s1_inv = DualMatrix::diag(r, r, &s1_inv);
    let core = DualMatrix::from_blocks(
        &(&h.k_block().adjoint() * &s1_inv),
        &DualMatrix::zeros(r, nr),
        &(&h.l_block().adjoint() * &s1_inv),
        &DualMatrix::zeros(nr, nr),
    );
    &(h.u() * &core) * &h.u().adjoint()
}

/// Group inverse of the essential part:
/// `A_e^# = Û [K̂^{-1}Σ̂₁^{-1}  K̂^{-1}Σ̂₁^{-1}K̂^{-1}L̂; O O] Û*`,
/// defined when `K̂` is invertible (decided on its standard part).
/// Nonexistence is a report, not an error.
pub fn group_inverse_essential(h: &HsDecomposition, tol: &ToleranceConfig) -> InverseReport {
    let r = h.r();
    let nr = h.dim() - r;
    let k_inv = match h.k_block().inverse(tol) {
        Ok(inv) => inv,
        Err(_) => return InverseReport::nonexistent(),
    };
    let s1_inv: Vec<DualReal> = h
        .sigma1()
        .iter()
        .map(|s| s.recip().expect("appreciable singular value"))
        .collect();
    let s1_inv = DualMatrix::diag(r, r, &s1_inv);
    let tl = &k_inv * &s1_inv;
    let tr = &(&tl * &k_inv) * h.l_block();
    let core = DualMatrix::from_blocks(
        &tl,
        &tr,
        &DualMatrix::zeros(nr, r),
        &DualMatrix::zeros(nr, nr),
    );
    let value = &(h.u() * &core) * &h.u().adjoint();

    let essential = h.essential();
    let residuals = group_equation_residuals(&essential, &value);
    InverseReport::from_residuals(value, residuals, tol)
}

/// MPDGI: `Â^P = A_s† − A_s† A_d A_s† ε`.
pub fn mpdgi(a: &DualMatrix, tol: &ToleranceConfig) -> Result<DualMatrix> {
    let mp = complex_mp(a.standard(), tol.rank_rel_tol)?;
    let dual = mp.mul(a.dual()).mul(&mp).neg();
    DualMatrix::new(mp, dual)
}

/// DMPGI: builds the unique candidate and verifies the four Penrose
/// equations; a failed check reports nonexistence with its residuals.
pub fn dmpgi(a: &DualMatrix, tol: &ToleranceConfig) -> Result<InverseReport> {
    let mp = complex_mp(a.standard(), tol.rank_rel_tol)?;
    let m = a.rows();
    let n = a.cols();
    let left_proj = ComplexMatrix::identity(m).sub(&a.standard().mul(&mp));
    let right_proj = ComplexMatrix::identity(n).sub(&mp.mul(a.standard()));
    let mp_adj = mp.adjoint();
    let ad_adj = a.dual().adjoint();
    let dual = mp
        .mul(a.dual())
        .mul(&mp)
        .neg()
        .add(&mp.mul(&mp_adj).mul(&ad_adj).mul(&left_proj))
        .add(&right_proj.mul(&ad_adj).mul(&mp_adj).mul(&mp));
    let candidate = DualMatrix::new(mp, dual)?;
    verify_inverse(a, &candidate, InverseKind::Dmpgi, tol)
}

/// DGGI: builds the candidate from the group inverse of the standard part
/// (when it exists) and verifies the three group equations.
pub fn dggi(a: &DualMatrix, tol: &ToleranceConfig) -> Result<InverseReport> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let g = match complex_group_inverse(a.standard(), tol.rank_rel_tol)? {
        Some(g) => g,
        None => return Ok(InverseReport::nonexistent()),
    };
    let n = a.rows();
    let proj = ComplexMatrix::identity(n).sub(&a.standard().mul(&g));
    let g2 = g.mul(&g);
    let dual = g
        .mul(a.dual())
        .mul(&g)
        .neg()
        .add(&g2.mul(a.dual()).mul(&proj))
        .add(&proj.mul(a.dual()).mul(&g2));
    let candidate = DualMatrix::new(g, dual)?;
    verify_inverse(a, &candidate, InverseKind::Dggi, tol)
}

/// Check `x` against the defining equations of the named inverse kind.
pub fn verify_inverse(
    a: &DualMatrix,
    x: &DualMatrix,
    kind: InverseKind,
    tol: &ToleranceConfig,
) -> Result<InverseReport> {
    if x.rows() != a.cols() || x.cols() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: format!("{}x{}", a.cols(), a.rows()),
            got: format!("{}x{}", x.rows(), x.cols()),
        });
    }
    let residuals = match kind {
        InverseKind::Ndmpi => {
            use crate::matrix::residual;
            let essential = essential_part(a, tol)?;
            let ax = a * x;
            let xa = x * a;
            let mut map = BTreeMap::new();
            map.insert("axa_eq_essential".into(), residual(&(&ax * a), &essential));
            map.insert("xax_eq_x".into(), residual(&(&xa * x), x));
            map.insert("ax_hermitian".into(), residual(&ax.adjoint(), &ax));
            map.insert("xa_hermitian".into(), residual(&xa.adjoint(), &xa));
            map
        }
        InverseKind::Dmpgi => penrose_residuals(a, x),
        InverseKind::Dggi => {
            if !a.is_square() {
                return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
            }
            group_equation_residuals(a, x)
        }
        InverseKind::GroupEssential => {
            if !a.is_square() {
                return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
            }
            let essential = essential_part(a, tol)?;
            group_equation_residuals(&essential, x)
        }
    };
    Ok(InverseReport::from_residuals(x.clone(), residuals, tol))
}

fn penrose_residuals(a: &DualMatrix, x: &DualMatrix) -> BTreeMap<String, f64> {
    use crate::matrix::residual;
    let ax = a * x;
    let xa = x * a;
    let mut map = BTreeMap::new();
    map.insert("axa_eq_a".into(), residual(&(&ax * a), a));
    map.insert("xax_eq_x".into(), residual(&(&xa * x), x));
    map.insert("ax_hermitian".into(), residual(&ax.adjoint(), &ax));
    map.insert("xa_hermitian".into(), residual(&xa.adjoint(), &xa));
    map
}

fn group_equation_residuals(a: &DualMatrix, x: &DualMatrix) -> BTreeMap<String, f64> {
    use crate::matrix::residual;
    let ax = a * x;
    let xa = x * a;
    let mut map = BTreeMap::new();
    map.insert("axa_eq_a".into(), residual(&(&ax * a), a));
    map.insert("xax_eq_x".into(), residual(&(&xa * x), x));
    map.insert("ax_commutes".into(), residual(&ax, &xa));
    map
}
