//! Dense complex matrices and the decomposition kernels built on them.
//!
//! Everything here is ordinary (non-dual) complex linear algebra: the
//! one-sided Jacobi SVD, a Hermitian Jacobi eigensolver, the Moore-Penrose
//! inverse, and the group inverse via full-rank factorization. Sizes are
//! small (n ≤ 64), so accuracy beats throughput throughout.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::{Error, Result};

/// Rotation threshold for the Jacobi sweeps; also bounds the unitarity
/// residual of the returned factors.
const JACOBI_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 64;

/// Dense row-major complex matrix. Zero-sized shapes are allowed; block
/// slicing of decompositions relies on them.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = ComplexMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from row-major nested data; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: format!("{c} entries per row"),
                    got: format!("{} entries in row {i}", row.len()),
                });
            }
        }
        Ok(ComplexMatrix { rows: r, cols: c, data: rows.concat() })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let lifted: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        ComplexMatrix::from_rows(&lifted)
    }

    pub fn diagonal(n: usize, entries: &[f64]) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for (i, &x) in entries.iter().enumerate().take(n) {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "inner dimensions must match: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(rhs.data.iter()) {
            *x += *y;
        }
        out
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(rhs.data.iter()) {
            *x -= *y;
        }
        out
    }

    pub fn scale(&self, k: Complex64) -> ComplexMatrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x *= k;
        }
        out
    }

    pub fn neg(&self) -> ComplexMatrix {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == Complex64::new(0.0, 0.0))
    }

    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> ComplexMatrix {
        assert!(row0 + rows <= self.rows && col0 + cols <= self.cols);
        ComplexMatrix::from_fn(rows, cols, |i, j| self[(row0 + i, col0 + j)])
    }

    pub fn set_submatrix(&mut self, row0: usize, col0: usize, block: &ComplexMatrix) {
        assert!(row0 + block.rows <= self.rows && col0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row0 + i, col0 + j)] = block[(i, j)];
            }
        }
    }

    fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    fn set_column(&mut self, j: usize, col: &[Complex64]) {
        for (i, &z) in col.iter().enumerate() {
            self[(i, j)] = z;
        }
    }

    /// Right-multiply columns (p, q) by the 2x2 unitary
    /// [[c, s], [-s·e^{-iφ}, c·e^{-iφ}]] used by the Jacobi sweeps.
    fn rotate_columns(&mut self, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
        for i in 0..self.rows {
            let xp = self[(i, p)];
            let xq = self[(i, q)];
            self[(i, p)] = c * xp - s * (phase.conj() * xq);
            self[(i, q)] = s * xp + c * (phase.conj() * xq);
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Full SVD of a complex matrix: `a = u · diag(sigma) · v*` with `u` m×m and
/// `v` n×n unitary and `sigma` descending.
#[derive(Debug, Clone)]
pub struct ComplexSvd {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

impl ComplexSvd {
    /// Numerical rank at the standard threshold
    /// `sigma_i > rel_tol · max(m,n) · sigma_max`.
    pub fn rank(&self, rel_tol: f64, m: usize, n: usize) -> usize {
        let cutoff = rank_cutoff(&self.sigma, rel_tol, m, n);
        self.sigma.iter().filter(|&&s| s > cutoff).count()
    }
}

pub(crate) fn rank_cutoff(sigma: &[f64], rel_tol: f64, m: usize, n: usize) -> f64 {
    let smax = sigma.first().copied().unwrap_or(0.0);
    rel_tol * (m.max(n).max(1) as f64) * smax
}

/// One-sided Jacobi SVD. Robust on rank-deficient and repeated-singular-value
/// inputs; unitarity of the factors is bounded by the sweep threshold.
pub fn complex_svd(a: &ComplexMatrix) -> Result<ComplexSvd> {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        let t = complex_svd(&a.adjoint())?;
        return Ok(ComplexSvd { u: t.v, sigma: t.sigma, v: t.u });
    }
    if n == 0 {
        return Ok(ComplexSvd { u: ComplexMatrix::identity(m), sigma: vec![], v: ComplexMatrix::identity(0) });
    }

    let mut w = a.clone();
    let mut v = ComplexMatrix::identity(n);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    let xp = w[(i, p)];
                    let xq = w[(i, q)];
                    app += xp.norm_sqr();
                    aqq += xq.norm_sqr();
                    apq += xp.conj() * xq;
                }
                if app == 0.0 || aqq == 0.0 {
                    continue;
                }
                let off = apq.norm();
                if off <= JACOBI_TOL * (app * aqq).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = apq / off;
                let zeta = (aqq - app) / (2.0 * off);
                let t = zeta.signum_or_one() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                w.rotate_columns(p, q, c, s, phase);
                v.rotate_columns(p, q, c, s, phase);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure);
    }

    // Column norms are the singular values; sort descending.
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n).map(|j| w.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
    // Apply the permutation by rebuilding the column sets.
    let mut sigma = Vec::with_capacity(n);
    let mut w_sorted = ComplexMatrix::zeros(m, n);
    let mut v_sorted = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        sigma.push(norms[src]);
        w_sorted.set_column(dst, &w.column(src));
        v_sorted.set_column(dst, &v.column(src));
    }

    // Normalize the well-determined columns of U; fill the rest (tiny or
    // zero singular values, plus the m−n tail) by Gram-Schmidt completion.
    let smax = sigma.first().copied().unwrap_or(0.0);
    let tiny = 16.0 * f64::EPSILON * (m.max(n) as f64) * smax;
    let mut u = ComplexMatrix::zeros(m, m);
    let mut filled = 0usize;
    for (j, &s) in sigma.iter().enumerate() {
        if s <= tiny {
            break;
        }
        let col: Vec<Complex64> = w_sorted.column(j).iter().map(|z| z / s).collect();
        u.set_column(j, &col);
        filled = j + 1;
    }
    complete_unitary(&mut u, filled);

    Ok(ComplexSvd { u, sigma, v: v_sorted })
}

/// Extend the first `filled` orthonormal columns of `u` to a full unitary
/// basis, deterministically: each round orthogonalizes every standard basis
/// vector against the accepted columns and keeps the largest residual.
fn complete_unitary(u: &mut ComplexMatrix, filled: usize) {
    let m = u.rows();
    let mut have = filled;
    while have < m {
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for k in 0..m {
            let mut cand: Vec<Complex64> = (0..m)
                .map(|i| if i == k { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
                .collect();
            // two rounds of modified Gram-Schmidt
            for _ in 0..2 {
                for j in 0..have {
                    let col = u.column(j);
                    let dot: Complex64 =
                        col.iter().zip(cand.iter()).map(|(a, b)| a.conj() * b).sum();
                    for (x, y) in cand.iter_mut().zip(col.iter()) {
                        *x -= dot * y;
                    }
                }
            }
            let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(b, _)| norm > *b) {
                best = Some((norm, cand));
            }
        }
        let (norm, mut cand) = best.expect("nonzero dimension");
        for x in cand.iter_mut() {
            *x /= norm;
        }
        u.set_column(have, &cand);
        have += 1;
    }
}

/// Eigendecomposition of a Hermitian matrix by two-sided Jacobi rotations:
/// `h = q · diag(lambda) · q*` with eigenvalues sorted descending.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<f64>)> {
    assert!(h.is_square(), "hermitian_eigen requires a square matrix");
    let n = h.rows();
    if n == 0 {
        return Ok((ComplexMatrix::identity(0), vec![]));
    }
    let mut a = h.clone();
    let mut q = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return Ok((q, vec![0.0; n]));
    }

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q_idx in (p + 1)..n {
                let hpq = a[(p, q_idx)];
                let off = hpq.norm();
                if off <= JACOBI_TOL * scale {
                    continue;
                }
                rotated = true;
                let phase = hpq / off;
                let hpp = a[(p, p)].re;
                let hqq = a[(q_idx, q_idx)].re;
                let zeta = (hqq - hpp) / (2.0 * off);
                let t = zeta.signum_or_one() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // a <- j* a j
                a.rotate_columns(p, q_idx, c, s, phase);
                rotate_rows_adjoint(&mut a, p, q_idx, c, s, phase);
                a[(p, q_idx)] = Complex64::new(0.0, 0.0);
                a[(q_idx, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q_idx, q_idx)] = Complex64::new(a[(q_idx, q_idx)].re, 0.0);
                q.rotate_columns(p, q_idx, c, s, phase);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure);
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());
    let mut lambda = Vec::with_capacity(n);
    let mut q_sorted = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        lambda.push(diag[src]);
        q_sorted.set_column(dst, &q.column(src));
    }
    Ok((q_sorted, lambda))
}

/// Left-multiply rows (p, q) by J* where J is the column rotation above.
fn rotate_rows_adjoint(a: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    for j in 0..a.cols() {
        let xp = a[(p, j)];
        let xq = a[(q, j)];
        a[(p, j)] = c * xp - s * (phase * xq);
        a[(q, j)] = s * xp + c * (phase * xq);
    }
}

/// Moore-Penrose inverse via the SVD, zeroing singular values at the
/// standard rank threshold.
pub fn complex_mp(a: &ComplexMatrix, rank_rel_tol: f64) -> Result<ComplexMatrix> {
    let (m, n) = (a.rows(), a.cols());
    let svd = complex_svd(a)?;
    let cutoff = rank_cutoff(&svd.sigma, rank_rel_tol, m, n);
    let mut pinv_diag = ComplexMatrix::zeros(n, m);
    for (i, &s) in svd.sigma.iter().enumerate() {
        if s > cutoff {
            pinv_diag[(i, i)] = Complex64::new(1.0 / s, 0.0);
        }
    }
    Ok(svd.v.mul(&pinv_diag).mul(&svd.u.adjoint()))
}

/// Inverse of a square matrix with full numerical rank.
pub fn complex_inverse(a: &ComplexMatrix, rank_rel_tol: f64) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let svd = complex_svd(a)?;
    let cutoff = rank_cutoff(&svd.sigma, rank_rel_tol, n, n);
    if svd.sigma.iter().any(|&s| s <= cutoff) {
        return Err(Error::SingularStandardPart);
    }
    let mut inv_diag = ComplexMatrix::zeros(n, n);
    for (i, &s) in svd.sigma.iter().enumerate() {
        inv_diag[(i, i)] = Complex64::new(1.0 / s, 0.0);
    }
    Ok(svd.v.mul(&inv_diag).mul(&svd.u.adjoint()))
}

/// Group inverse of a square matrix via full-rank factorization, with the
/// existence check rank(a²) = rank(a). Returns `None` when it does not exist.
pub fn complex_group_inverse(a: &ComplexMatrix, rank_rel_tol: f64) -> Result<Option<ComplexMatrix>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let svd = complex_svd(a)?;
    let r = svd.rank(rank_rel_tol, n, n);
    if r == 0 {
        // the zero matrix is its own group inverse
        return Ok(Some(ComplexMatrix::zeros(n, n)));
    }
    let a2 = a.mul(a);
    let svd2 = complex_svd(&a2)?;
    if svd2.rank(rank_rel_tol, n, n) != r {
        return Ok(None);
    }
    // a = f·g with f = u_r·diag(sigma_r), g = v_r*; then a# = f·(gf)^{-2}·g
    let mut f = ComplexMatrix::zeros(n, r);
    for j in 0..r {
        for i in 0..n {
            f[(i, j)] = svd.u[(i, j)] * svd.sigma[j];
        }
    }
    let mut g = ComplexMatrix::zeros(r, n);
    for i in 0..r {
        for j in 0..n {
            g[(i, j)] = svd.v[(j, i)].conj();
        }
    }
    let gf = g.mul(&f);
    let gf_inv = match complex_inverse(&gf, rank_rel_tol) {
        Ok(inv) => inv,
        Err(Error::SingularStandardPart) => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(Some(f.mul(&gf_inv).mul(&gf_inv).mul(&g)))
}

trait SignumOrOne {
    fn signum_or_one(self) -> f64;
}

impl SignumOrOne for f64 {
    fn signum_or_one(self) -> f64 {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}
