//! Singular value decomposition of dual complex matrices.
//!
//! `Â = Û Σ̂ V̂*` with dual unitary factors. The singular values are dual
//! reals sorted descending under the lexicographic order: `r` appreciable
//! positive values first, then `t − r` positive infinitesimal ones, then
//! exact zeros.
//!
//! The algorithm: decompose the standard part, form the coupling
//! `B = U_s* A_d V_s`, and solve the first-order expansion
//! `B = P Σ + Σ_d − Σ Q` for skew-Hermitian generators `P = U_s*U_d`,
//! `Q = V_s*V_d` and the real diagonal `Σ_d`. Index pairs in distinct
//! singular-value groups yield 2×2 linear systems; a group with common
//! positive value is handled by diagonalizing the Hermitian part of its
//! coupling block; the zero group takes an ordinary SVD of its block, whose
//! singular values become the infinitesimal dual singular values.

use num_complex::Complex64;

use crate::complexmat::{complex_svd, hermitian_eigen, rank_cutoff, ComplexMatrix};
use crate::matrix::{residual, DualMatrix, ToleranceConfig};
use crate::scalar::DualReal;
use crate::{Error, Result};

/// Self-validation bounds applied to every result before it is returned.
const SELF_RECON_TOL: f64 = 1e-8;
const SELF_UNITARY_TOL: f64 = 1e-9;

/// Result of [`dual_svd`].
#[derive(Debug, Clone)]
pub struct DualSvd {
    u: DualMatrix,
    sigma: Vec<DualReal>,
    v: DualMatrix,
    r: usize,
    t: usize,
}

impl DualSvd {
    /// Left dual unitary factor, m×m.
    pub fn u(&self) -> &DualMatrix {
        &self.u
    }

    /// Right dual unitary factor, n×n.
    pub fn v(&self) -> &DualMatrix {
        &self.v
    }

    /// Dual singular values, length min(m,n), descending.
    pub fn sigma(&self) -> &[DualReal] {
        &self.sigma
    }

    /// Count of appreciable positive singular values.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Count of nonzero singular values (`t ≥ r`; the values in `r..t` are
    /// positive infinitesimal).
    pub fn t(&self) -> usize {
        self.t
    }

    /// The m×n dual diagonal Σ̂.
    pub fn sigma_matrix(&self) -> DualMatrix {
        DualMatrix::diag(self.u.rows(), self.v.rows(), &self.sigma)
    }

    /// `Û Σ̂ V̂*`.
    pub fn reconstruct(&self) -> DualMatrix {
        &(&self.u * &self.sigma_matrix()) * &self.v.adjoint()
    }

    /// Essential part `A_e = Û [Σ̂₁ 0; 0 0] V̂*` (appreciable values only).
    pub fn essential(&self) -> DualMatrix {
        let kept = DualMatrix::diag(self.u.rows(), self.v.rows(), &self.sigma[..self.r]);
        &(&self.u * &kept) * &self.v.adjoint()
    }

    /// Nonessential part `A_n = Û [0 0; 0 Σ̂₂] V̂*`; its standard part is
    /// identically zero because Σ̂₂ is infinitesimal.
    pub fn nonessential(&self) -> DualMatrix {
        let mut tail: Vec<DualReal> = vec![DualReal::ZERO; self.sigma.len()];
        tail[self.r..].copy_from_slice(&self.sigma[self.r..]);
        let kept = DualMatrix::diag(self.u.rows(), self.v.rows(), &tail);
        &(&self.u * &kept) * &self.v.adjoint()
    }
}

/// Essential part of a dual matrix (appreciable singular directions).
pub fn essential_part(a: &DualMatrix, tol: &ToleranceConfig) -> Result<DualMatrix> {
    Ok(dual_svd(a, tol)?.essential())
}

/// Nonessential part of a dual matrix (infinitesimal singular directions).
pub fn nonessential_part(a: &DualMatrix, tol: &ToleranceConfig) -> Result<DualMatrix> {
    Ok(dual_svd(a, tol)?.nonessential())
}

/// Compute the dual SVD. The result is self-validated (reconstruction and
/// unitarity) before it is returned.
pub fn dual_svd(a: &DualMatrix, tol: &ToleranceConfig) -> Result<DualSvd> {
    let (m, n) = (a.rows(), a.cols());
    let k = m.min(n);

    let std_svd = complex_svd(a.standard())?;
    let mut u = std_svd.u;
    let mut v = std_svd.v;
    let sig = std_svd.sigma;

    let cutoff = rank_cutoff(&sig, tol.rank_rel_tol, m, n);
    let r = sig.iter().filter(|&&s| s > cutoff).count();

    // Group equal appreciable singular values: neighbors closer than the
    // rank tolerance (relative to sigma_max) share a group.
    let smax = sig.first().copied().unwrap_or(0.0);
    let gap_tol = tol.rank_rel_tol * smax;
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=r {
        if i == r || sig[i - 1] - sig[i] > gap_tol {
            groups.push((start, i));
            start = i;
        }
    }

    let mut b = u.adjoint().mul(a.dual()).mul(&v);
    let mut sigma_dual = vec![0.0f64; k];

    // Appreciable groups: rotate both factors by the unitary diagonalizing
    // the Hermitian part of the group's coupling block. The eigenvalues are
    // the dual parts of those singular values, sorted descending.
    for &(g0, g1) in &groups {
        let gs = g1 - g0;
        let bg = b_block(&b, g0, g1, g0, g1);
        let h = hermitian_part(&bg);
        let (rot, lambda) = hermitian_eigen(&h).map_err(|_| Error::DegenerateCoupling)?;
        sigma_dual[g0..g1].copy_from_slice(&lambda);
        if gs > 1 {
            rotate_columns_range(&mut u, g0, g1, &rot);
            rotate_columns_range(&mut v, g0, g1, &rot);
            apply_rotation_to_coupling(&mut b, g0, g1, g0, g1, &rot, &rot);
        }
    }

    // Zero group: ordinary SVD of the trailing block of the coupling. Its
    // singular values are the infinitesimal dual singular values.
    let b0 = b_block(&b, r, m, r, n);
    let zero_svd = complex_svd(&b0)?;
    if m > r || n > r {
        rotate_columns_range(&mut u, r, m, &zero_svd.u);
        rotate_columns_range(&mut v, r, n, &zero_svd.v);
        apply_rotation_to_coupling(&mut b, r, m, r, n, &zero_svd.u, &zero_svd.v);
    }
    sigma_dual[r..k].copy_from_slice(&zero_svd.sigma[..k - r]);

    // Infinitesimal values below the numerical-rank rule of the zero block
    // are exact zeros; t marks the boundary.
    let dual_cutoff = rank_cutoff(&zero_svd.sigma, tol.rank_rel_tol, m - r, n - r);
    let mut t = r;
    for (i, value) in sigma_dual.iter_mut().enumerate().skip(r) {
        if *value > dual_cutoff {
            t = i + 1;
        } else {
            *value = 0.0;
        }
    }

    // Cross-group corrections: solve B = PΣ + Σ_d − ΣQ entrywise for the
    // skew-Hermitian generators. Within a group only the skew part of the
    // coupling block remains after the rotation above.
    let mut p = ComplexMatrix::zeros(m, m);
    let mut q = ComplexMatrix::zeros(n, n);
    let sig_of = |idx: usize| if idx < r { sig[idx] } else { 0.0 };
    let group_of = |idx: usize| -> usize {
        for (gi, &(g0, g1)) in groups.iter().enumerate() {
            if idx >= g0 && idx < g1 {
                return gi;
            }
        }
        usize::MAX // the zero group
    };

    for i in 0..r {
        // split the imaginary residue of each appreciable diagonal entry
        let pii = Complex64::new(0.0, b[(i, i)].im / (2.0 * sig[i]));
        p[(i, i)] = pii;
        q[(i, i)] = -pii;
    }

    for i in 0..m.max(n) {
        for j in (i + 1)..m.max(n) {
            let gi = group_of(i);
            let gj = group_of(j);
            if gi == usize::MAX && gj == usize::MAX {
                continue; // zero block, handled by its rotation
            }
            if gi == gj {
                // same appreciable group: skew part scaled by 1/(σ_i + σ_j)
                let s_ij = (b[(i, j)] - b[(j, i)].conj()) * 0.5;
                let denom = sig[i] + sig[j];
                p[(i, j)] = s_ij / denom;
                p[(j, i)] = -(s_ij / denom).conj();
                q[(i, j)] = -s_ij / denom;
                q[(j, i)] = (s_ij / denom).conj();
                continue;
            }
            let si = sig_of(i);
            let sj = sig_of(j);
            let b_ij = (i < m && j < n).then(|| b[(i, j)]);
            let b_ji = (j < m && i < n).then(|| b[(j, i)]);
            match (b_ij, b_ji) {
                (Some(bij), Some(bji)) => {
                    let denom = sj * sj - si * si;
                    let pij = (sj * bij + si * bji.conj()) / denom;
                    let qij = (si * bij + sj * bji.conj()) / denom;
                    p[(i, j)] = pij;
                    p[(j, i)] = -pij.conj();
                    q[(i, j)] = qij;
                    q[(j, i)] = -qij.conj();
                }
                (Some(bij), None) => {
                    // j ≥ m: only the Q entry exists, and σ_j = 0
                    let qij = -bij / si;
                    q[(i, j)] = qij;
                    q[(j, i)] = -qij.conj();
                }
                (None, Some(bji)) => {
                    // j ≥ n: only the P entry exists, and σ_j = 0
                    let pij = -bji.conj() / si;
                    p[(i, j)] = pij;
                    p[(j, i)] = -pij.conj();
                }
                (None, None) => unreachable!("j < max(m,n)"),
            }
        }
    }

    let u_dual = u.mul(&p);
    let v_dual = v.mul(&q);
    let u_hat = DualMatrix::new(u, u_dual)?;
    let v_hat = DualMatrix::new(v, v_dual)?;

    let sigma: Vec<DualReal> = (0..k)
        .map(|i| DualReal::new(if i < r { sig[i] } else { 0.0 }, sigma_dual[i]))
        .collect();

    let out = DualSvd { u: u_hat, sigma, v: v_hat, r, t };
    validate(&out, a)?;
    Ok(out)
}

fn validate(svd: &DualSvd, a: &DualMatrix) -> Result<()> {
    let recon = residual(&svd.reconstruct(), a);
    if recon > SELF_RECON_TOL {
        return Err(Error::SelfCheckFailed(format!("dual SVD reconstruction residual {recon:.3e}")));
    }
    for (name, f) in [("U", &svd.u), ("V", &svd.v)] {
        let res = dual_unitary_residual(f);
        if res > SELF_UNITARY_TOL {
            return Err(Error::SelfCheckFailed(format!("factor {name} unitarity residual {res:.3e}")));
        }
    }
    Ok(())
}

/// Scale-normalized deviation of `Û*Û` from the identity.
pub fn dual_unitary_residual(u: &DualMatrix) -> f64 {
    residual(&u.adjoint().mul(u), &DualMatrix::identity(u.rows()))
}

fn b_block(b: &ComplexMatrix, r0: usize, r1: usize, c0: usize, c1: usize) -> ComplexMatrix {
    b.submatrix(r0, c0, r1 - r0, c1 - c0)
}

fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    m.add(&m.adjoint()).scale(Complex64::new(0.5, 0.0))
}

/// `m[:, lo..hi] ← m[:, lo..hi] · rot`
fn rotate_columns_range(m: &mut ComplexMatrix, lo: usize, hi: usize, rot: &ComplexMatrix) {
    if hi == lo {
        return;
    }
    let cols = m.submatrix(0, lo, m.rows(), hi - lo);
    m.set_submatrix(0, lo, &cols.mul(rot));
}

/// Update the coupling after rotating U columns `rlo..rhi` by `ru` and V
/// columns `clo..chi` by `rv`: rows get `ru*·`, columns get `·rv`.
fn apply_rotation_to_coupling(
    b: &mut ComplexMatrix,
    rlo: usize,
    rhi: usize,
    clo: usize,
    chi: usize,
    ru: &ComplexMatrix,
    rv: &ComplexMatrix,
) {
    if rhi > rlo {
        let rows = b.submatrix(rlo, 0, rhi - rlo, b.cols());
        b.set_submatrix(rlo, 0, &ru.adjoint().mul(&rows));
    }
    if chi > clo {
        let cols = b.submatrix(0, clo, b.rows(), chi - clo);
        b.set_submatrix(0, clo, &cols.mul(rv));
    }
}
