//! Dense dual complex matrices.
//!
//! A `DualMatrix` is a pair `(A_s, A_d)` of equally sized complex matrices
//! representing `A_s + A_d ε`. Products drop the `A_d B_d` term because
//! `ε² = 0`, so dual matrix arithmetic is exact first-order arithmetic.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complexmat::{complex_inverse, complex_svd, ComplexMatrix};
use crate::scalar::{DualComplex, DualReal};
use crate::{Error, Result};

/// Thresholds governing every approximate comparison in the crate.
///
/// `rank_rel_tol` feeds the numerical-rank rule
/// `sigma_i > rank_rel_tol · max(m,n) · sigma_max`; the `eq_*` pair defines
/// matrix equality, tested separately on standard and dual parts:
/// `‖diff‖_F ≤ eq_abs_tol + eq_rel_tol · max(part norms)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub rank_rel_tol: f64,
    pub eq_abs_tol: f64,
    pub eq_rel_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig { rank_rel_tol: 1e-8, eq_abs_tol: 1e-9, eq_rel_tol: 1e-9 }
    }
}

impl ToleranceConfig {
    pub fn with_eq_tol(mut self, tol: f64) -> Self {
        self.eq_abs_tol = tol;
        self.eq_rel_tol = tol;
        self
    }

    pub fn with_rank_tol(mut self, tol: f64) -> Self {
        self.rank_rel_tol = tol;
        self
    }
}

/// Matrix classes testable through [`DualMatrix::is_class`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixClass {
    Hermitian,
    Idempotent,
    Normal,
    DualUnitary,
}

/// A dual complex matrix `A_s + A_d ε`. Both parts always share dimensions.
/// Immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq)]
pub struct DualMatrix {
    std_part: ComplexMatrix,
    dual_part: ComplexMatrix,
}

impl DualMatrix {
    pub fn new(std_part: ComplexMatrix, dual_part: ComplexMatrix) -> Result<Self> {
        if (std_part.rows(), std_part.cols()) != (dual_part.rows(), dual_part.cols()) {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", std_part.rows(), std_part.cols()),
                got: format!("{}x{}", dual_part.rows(), dual_part.cols()),
            });
        }
        Ok(DualMatrix { std_part, dual_part })
    }

    pub fn from_standard(std_part: ComplexMatrix) -> Self {
        let dual_part = ComplexMatrix::zeros(std_part.rows(), std_part.cols());
        DualMatrix { std_part, dual_part }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DualMatrix {
            std_part: ComplexMatrix::zeros(rows, cols),
            dual_part: ComplexMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        DualMatrix { std_part: ComplexMatrix::identity(n), dual_part: ComplexMatrix::zeros(n, n) }
    }

    /// m×n matrix with the given dual reals on the main diagonal.
    pub fn diag(rows: usize, cols: usize, values: &[DualReal]) -> Self {
        let mut m = DualMatrix::zeros(rows, cols);
        for (i, v) in values.iter().enumerate().take(rows.min(cols)) {
            m.std_part[(i, i)] = Complex64::new(v.std_part, 0.0);
            m.dual_part[(i, i)] = Complex64::new(v.dual_part, 0.0);
        }
        m
    }

    pub fn standard(&self) -> &ComplexMatrix {
        &self.std_part
    }

    pub fn dual(&self) -> &ComplexMatrix {
        &self.dual_part
    }

    pub fn rows(&self) -> usize {
        self.std_part.rows()
    }

    pub fn cols(&self) -> usize {
        self.std_part.cols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> DualComplex {
        DualComplex::new(self.std_part[(i, j)], self.dual_part[(i, j)])
    }

    pub fn set(&mut self, i: usize, j: usize, v: DualComplex) {
        self.std_part[(i, j)] = v.std_part;
        self.dual_part[(i, j)] = v.dual_part;
    }

    /// Dual matrix product: `(A_s B_s) + (A_s B_d + A_d B_s) ε`.
    /// Panics when inner dimensions differ.
    pub fn mul(&self, rhs: &DualMatrix) -> DualMatrix {
        let std_part = self.std_part.mul(&rhs.std_part);
        let dual_part = self.std_part.mul(&rhs.dual_part).add(&self.dual_part.mul(&rhs.std_part));
        DualMatrix { std_part, dual_part }
    }

    pub fn add(&self, rhs: &DualMatrix) -> DualMatrix {
        DualMatrix {
            std_part: self.std_part.add(&rhs.std_part),
            dual_part: self.dual_part.add(&rhs.dual_part),
        }
    }

    pub fn sub(&self, rhs: &DualMatrix) -> DualMatrix {
        DualMatrix {
            std_part: self.std_part.sub(&rhs.std_part),
            dual_part: self.dual_part.sub(&rhs.dual_part),
        }
    }

    pub fn neg(&self) -> DualMatrix {
        DualMatrix { std_part: self.std_part.neg(), dual_part: self.dual_part.neg() }
    }

    pub fn scale(&self, k: DualComplex) -> DualMatrix {
        DualMatrix {
            std_part: self.std_part.scale(k.std_part),
            dual_part: self.std_part.scale(k.dual_part).add(&self.dual_part.scale(k.std_part)),
        }
    }

    /// Conjugate transpose applied to both parts.
    pub fn adjoint(&self) -> DualMatrix {
        DualMatrix { std_part: self.std_part.adjoint(), dual_part: self.dual_part.adjoint() }
    }

    /// Frobenius norm of the standard and dual parts, separately.
    pub fn frobenius_norms(&self) -> (f64, f64) {
        (self.std_part.frobenius_norm(), self.dual_part.frobenius_norm())
    }

    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> DualMatrix {
        DualMatrix {
            std_part: self.std_part.submatrix(row0, col0, rows, cols),
            dual_part: self.dual_part.submatrix(row0, col0, rows, cols),
        }
    }

    /// Assemble `[tl tr; bl br]`. Block shapes must be conformal; zero-sized
    /// blocks are fine.
    pub fn from_blocks(tl: &DualMatrix, tr: &DualMatrix, bl: &DualMatrix, br: &DualMatrix) -> DualMatrix {
        assert_eq!(tl.rows(), tr.rows());
        assert_eq!(bl.rows(), br.rows());
        assert_eq!(tl.cols(), bl.cols());
        assert_eq!(tr.cols(), br.cols());
        let rows = tl.rows() + bl.rows();
        let cols = tl.cols() + tr.cols();
        let mut std_part = ComplexMatrix::zeros(rows, cols);
        let mut dual_part = ComplexMatrix::zeros(rows, cols);
        std_part.set_submatrix(0, 0, tl.standard());
        std_part.set_submatrix(0, tl.cols(), tr.standard());
        std_part.set_submatrix(tl.rows(), 0, bl.standard());
        std_part.set_submatrix(tl.rows(), tl.cols(), br.standard());
        dual_part.set_submatrix(0, 0, tl.dual());
        dual_part.set_submatrix(0, tl.cols(), tr.dual());
        dual_part.set_submatrix(tl.rows(), 0, bl.dual());
        dual_part.set_submatrix(tl.rows(), tl.cols(), br.dual());
        DualMatrix { std_part, dual_part }
    }

    /// Equality test: each part passes
    /// `‖diff‖_F ≤ eq_abs_tol + eq_rel_tol · max(part norms)` independently.
    pub fn approx_eq(&self, other: &DualMatrix, tol: &ToleranceConfig) -> bool {
        if (self.rows(), self.cols()) != (other.rows(), other.cols()) {
            return false;
        }
        let part_ok = |a: &ComplexMatrix, b: &ComplexMatrix| {
            let diff = a.sub(b).frobenius_norm();
            diff <= tol.eq_abs_tol + tol.eq_rel_tol * a.frobenius_norm().max(b.frobenius_norm())
        };
        part_ok(&self.std_part, &other.std_part) && part_ok(&self.dual_part, &other.dual_part)
    }

    /// Inverse of a square dual matrix with invertible standard part:
    /// `A_s^{-1} - A_s^{-1} A_d A_s^{-1} ε`.
    pub fn inverse(&self, tol: &ToleranceConfig) -> Result<DualMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        let inv = complex_inverse(&self.std_part, tol.rank_rel_tol)?;
        let dual = inv.mul(&self.dual_part).mul(&inv).neg();
        DualMatrix::new(inv, dual)
    }

    /// Tolerance-based membership test for the named matrix class.
    pub fn is_class(&self, class: MatrixClass, tol: &ToleranceConfig) -> Result<bool> {
        Ok(self.class_residual(class)? <= eq_threshold(tol))
    }

    /// Scale-normalized deviation from the class-defining identity.
    pub fn class_residual(&self, class: MatrixClass) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        let r = match class {
            MatrixClass::Hermitian => residual(&self.adjoint(), self),
            MatrixClass::Idempotent => residual(&self.mul(self), self),
            MatrixClass::Normal => {
                residual(&self.mul(&self.adjoint()), &self.adjoint().mul(self))
            }
            MatrixClass::DualUnitary => {
                residual(&self.adjoint().mul(self), &DualMatrix::identity(self.rows()))
            }
        };
        Ok(r)
    }

    /// Numerical rank of the standard part.
    pub fn standard_rank(&self, tol: &ToleranceConfig) -> Result<usize> {
        let svd = complex_svd(&self.std_part)?;
        Ok(svd.rank(tol.rank_rel_tol, self.rows(), self.cols()))
    }
}

/// Effective threshold for scale-normalized residuals; coincides with the
/// per-part equality rule when both scales dominate the absolute floor.
pub(crate) fn eq_threshold(tol: &ToleranceConfig) -> f64 {
    tol.eq_abs_tol.max(tol.eq_rel_tol)
}

/// Scale-normalized deviation between two dual matrices:
/// `max over parts of ‖a_p − b_p‖_F / (1 + max(‖a_p‖, ‖b_p‖))`.
pub fn residual(a: &DualMatrix, b: &DualMatrix) -> f64 {
    let part = |x: &ComplexMatrix, y: &ComplexMatrix| {
        x.sub(y).frobenius_norm() / (1.0 + x.frobenius_norm().max(y.frobenius_norm()))
    };
    part(a.standard(), b.standard()).max(part(a.dual(), b.dual()))
}

impl std::ops::Mul for &DualMatrix {
    type Output = DualMatrix;
    fn mul(self, rhs: &DualMatrix) -> DualMatrix {
        DualMatrix::mul(self, rhs)
    }
}

impl std::ops::Add for &DualMatrix {
    type Output = DualMatrix;
    fn add(self, rhs: &DualMatrix) -> DualMatrix {
        DualMatrix::add(self, rhs)
    }
}

impl std::ops::Sub for &DualMatrix {
    type Output = DualMatrix;
    fn sub(self, rhs: &DualMatrix) -> DualMatrix {
        DualMatrix::sub(self, rhs)
    }
}

// ── JSON wire format ────────────────────────────────────────────────
//
// {"rows": m, "cols": n,
//  "standard": [[[re,im], ...], ...],
//  "dual":     [[[re,im], ...], ...]}
// Row-major nesting, both parts mandatory.

#[derive(Serialize, Deserialize)]
struct WireMatrix {
    rows: usize,
    cols: usize,
    standard: Vec<Vec<[f64; 2]>>,
    dual: Vec<Vec<[f64; 2]>>,
}

fn wire_part(name: &str, rows: usize, cols: usize, data: &[Vec<[f64; 2]>]) -> Result<ComplexMatrix> {
    if data.len() != rows {
        return Err(Error::InvalidMatrixFile(format!(
            "field \"{name}\" has {} rows, expected rows={rows}",
            data.len()
        )));
    }
    for (i, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::InvalidMatrixFile(format!(
                "field \"{name}\" row {i} has {} entries, expected cols={cols}",
                row.len()
            )));
        }
    }
    let mut m = ComplexMatrix::zeros(rows, cols);
    for (i, row) in data.iter().enumerate() {
        for (j, &[re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::InvalidMatrixFile(format!(
                    "field \"{name}\" entry ({i},{j}) is not finite"
                )));
            }
            m[(i, j)] = Complex64::new(re, im);
        }
    }
    Ok(m)
}

impl DualMatrix {
    /// Parse the shared matrix JSON format, validating shape fields.
    pub fn from_json_str(text: &str) -> Result<DualMatrix> {
        let wire: WireMatrix = serde_json::from_str(text)
            .map_err(|e| Error::InvalidMatrixFile(e.to_string()))?;
        if wire.rows == 0 || wire.cols == 0 {
            return Err(Error::InvalidMatrixFile(
                "fields \"rows\" and \"cols\" must be positive".into(),
            ));
        }
        let std_part = wire_part("standard", wire.rows, wire.cols, &wire.standard)?;
        let dual_part = wire_part("dual", wire.rows, wire.cols, &wire.dual)?;
        DualMatrix::new(std_part, dual_part)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("wire matrix serializes")
    }

    fn to_wire(&self) -> WireMatrix {
        let dump = |m: &ComplexMatrix| -> Vec<Vec<[f64; 2]>> {
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect()
        };
        WireMatrix {
            rows: self.rows(),
            cols: self.cols(),
            standard: dump(&self.std_part),
            dual: dump(&self.dual_part),
        }
    }
}

impl Serialize for DualMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DualMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = WireMatrix::deserialize(deserializer)?;
        if wire.rows == 0 || wire.cols == 0 {
            return Err(D::Error::custom("fields \"rows\" and \"cols\" must be positive"));
        }
        let std_part =
            wire_part("standard", wire.rows, wire.cols, &wire.standard).map_err(D::Error::custom)?;
        let dual_part =
            wire_part("dual", wire.rows, wire.cols, &wire.dual).map_err(D::Error::custom)?;
        DualMatrix::new(std_part, dual_part).map_err(D::Error::custom)
    }
}
