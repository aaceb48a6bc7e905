//! Hartwig-Spindelböck decomposition of square dual complex matrices.
//!
//! From the dual SVD `Â = Û Σ̂ V̂*`, set `Ŵ = V̂*Û = [K̂ L̂; M̂ N̂]`. Then
//!
//! `Â = Û [Σ̂₁K̂ Σ̂₁L̂; Σ̂₂M̂ Σ̂₂N̂] Û*`
//!
//! with `K̂K̂* + L̂L̂* = I_r` and `K̂M̂* + L̂N̂* = O` because `Ŵ` is dual
//! unitary. `Σ̂₁` holds the `r` appreciable singular values, `Σ̂₂` the
//! infinitesimal ones padded with zeros to size `n − r`.
//!
//! The decomposition is not unique (unitary freedom within equal singular
//! values), so consumers compare matrix-valued results, never raw blocks,
//! except where a characterization explicitly constrains a block.

use crate::matrix::{DualMatrix, ToleranceConfig};
use crate::scalar::DualReal;
use crate::svd::dual_svd;
use crate::{Error, Result};

/// Hartwig-Spindelböck data of a square dual matrix.
#[derive(Debug, Clone)]
pub struct HsDecomposition {
    u: DualMatrix,
    sigma1: Vec<DualReal>,
    sigma2: Vec<DualReal>,
    k: DualMatrix,
    l: DualMatrix,
    m: DualMatrix,
    nblk: DualMatrix,
}

/// Decompose a square dual matrix. `r` and the singular values agree with
/// [`dual_svd`] of the input.
pub fn hs_decompose(a: &DualMatrix, tol: &ToleranceConfig) -> Result<HsDecomposition> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let svd = dual_svd(a, tol)?;
    let r = svd.r();
    let w = &svd.v().adjoint() * svd.u();
    Ok(HsDecomposition {
        u: svd.u().clone(),
        sigma1: svd.sigma()[..r].to_vec(),
        sigma2: svd.sigma()[r..].to_vec(),
        k: w.block(0, 0, r, r),
        l: w.block(0, r, r, n - r),
        m: w.block(r, 0, n - r, r),
        nblk: w.block(r, r, n - r, n - r),
    })
}

impl HsDecomposition {
    pub fn dim(&self) -> usize {
        self.u.rows()
    }

    /// Count of appreciable singular values; the split point of the blocks.
    pub fn r(&self) -> usize {
        self.sigma1.len()
    }

    pub fn u(&self) -> &DualMatrix {
        &self.u
    }

    pub fn sigma1(&self) -> &[DualReal] {
        &self.sigma1
    }

    pub fn sigma2(&self) -> &[DualReal] {
        &self.sigma2
    }

    pub fn k_block(&self) -> &DualMatrix {
        &self.k
    }

    pub fn l_block(&self) -> &DualMatrix {
        &self.l
    }

    pub fn m_block(&self) -> &DualMatrix {
        &self.m
    }

    pub fn n_block(&self) -> &DualMatrix {
        &self.nblk
    }

    /// The assembled dual unitary `Ŵ = [K̂ L̂; M̂ N̂]`.
    pub fn w(&self) -> DualMatrix {
        DualMatrix::from_blocks(&self.k, &self.l, &self.m, &self.nblk)
    }

    /// `Σ̂₁` as an r×r dual matrix.
    pub fn sigma1_matrix(&self) -> DualMatrix {
        DualMatrix::diag(self.r(), self.r(), &self.sigma1)
    }

    /// `Σ̂₂` as an (n−r)×(n−r) dual matrix (zero standard part).
    pub fn sigma2_matrix(&self) -> DualMatrix {
        let nr = self.dim() - self.r();
        DualMatrix::diag(nr, nr, &self.sigma2)
    }

    /// `Û [Σ̂₁K̂ Σ̂₁L̂; Σ̂₂M̂ Σ̂₂N̂] Û*`.
    pub fn reconstruct(&self) -> DualMatrix {
        let s1 = self.sigma1_matrix();
        let s2 = self.sigma2_matrix();
        let core = DualMatrix::from_blocks(
            &(&s1 * &self.k),
            &(&s1 * &self.l),
            &(&s2 * &self.m),
            &(&s2 * &self.nblk),
        );
        &(&self.u * &core) * &self.u.adjoint()
    }

    /// Essential part `A_e = Û [Σ̂₁K̂ Σ̂₁L̂; O O] Û*`.
    pub fn essential(&self) -> DualMatrix {
        let s1 = self.sigma1_matrix();
        let nr = self.dim() - self.r();
        let core = DualMatrix::from_blocks(
            &(&s1 * &self.k),
            &(&s1 * &self.l),
            &DualMatrix::zeros(nr, self.r()),
            &DualMatrix::zeros(nr, nr),
        );
        &(&self.u * &core) * &self.u.adjoint()
    }
}
