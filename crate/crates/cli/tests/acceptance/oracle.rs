//! Exact-arithmetic oracle for the NDMPI, independent of the floating-point
//! pipeline.
//!
//! Arithmetic runs over Gaussian rationals (ℚ[i]) with a symbolic ε
//! (truncated at ε², exactly as dual arithmetic demands). The Moore-Penrose
//! inverse of the standard part comes from an exact full-rank factorization
//! via row reduction; the essential part comes from the projector identity
//! `A_n = (I − A_sA_s†) A_d (I − A_s†A_s) ε`; the NDMPI is then the unique
//! solution of the four defining equations, which the oracle re-verifies
//! exactly before returning.

use num::{BigRational, FromPrimitive, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct GRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GRat {
    pub fn from_ints(re: i64, im: i64) -> Self {
        GRat {
            re: BigRational::from_i64(re).unwrap(),
            im: BigRational::from_i64(im).unwrap(),
        }
    }

    pub fn zero() -> Self {
        GRat { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        GRat::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, o: &GRat) -> Self {
        GRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &GRat) -> Self {
        GRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &GRat) -> Self {
        GRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn div(&self, o: &GRat) -> Self {
        assert!(!o.is_zero(), "division by zero");
        let denom = &o.re * &o.re + &o.im * &o.im;
        let num = self.mul(&o.conj());
        GRat { re: num.re / denom.clone(), im: num.im / denom }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap(), self.im.to_f64().unwrap())
    }
}

/// Dense exact complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<GRat>,
}

impl EMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        EMat { rows, cols, data: vec![GRat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = EMat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = GRat::one();
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &GRat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut GRat {
        &mut self.data[i * self.cols + j]
    }

    pub fn adjoint(&self) -> EMat {
        let mut out = EMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).conj();
            }
        }
        out
    }

    pub fn mul(&self, o: &EMat) -> EMat {
        assert_eq!(self.cols, o.rows);
        let mut out = EMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let term = self.at(i, k).mul(o.at(k, j));
                    *out.at_mut(i, j) = out.at(i, j).add(&term);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &EMat) -> EMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(o.data.iter()) {
            *x = x.add(y);
        }
        out
    }

    pub fn sub(&self, o: &EMat) -> EMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(o.data.iter()) {
            *x = x.sub(y);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GRat::is_zero)
    }

    /// Reduced row echelon form plus the pivot column indices.
    fn rref(&self) -> (EMat, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            let Some(pivot_row) = (row..a.rows).find(|&r| !a.at(r, col).is_zero()) else {
                continue;
            };
            for j in 0..a.cols {
                let tmp = a.at(row, j).clone();
                *a.at_mut(row, j) = a.at(pivot_row, j).clone();
                *a.at_mut(pivot_row, j) = tmp;
            }
            let inv = GRat::one().div(a.at(row, col));
            for j in 0..a.cols {
                *a.at_mut(row, j) = a.at(row, j).mul(&inv);
            }
            for r in 0..a.rows {
                if r != row && !a.at(r, col).is_zero() {
                    let factor = a.at(r, col).clone();
                    for j in 0..a.cols {
                        let term = factor.mul(a.at(row, j));
                        *a.at_mut(r, j) = a.at(r, j).sub(&term);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == a.rows {
                break;
            }
        }
        (a, pivots)
    }

    /// Exact inverse of a square matrix by Gauss-Jordan elimination.
    fn inverse(&self) -> EMat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = EMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = GRat::one();
        }
        let (reduced, pivots) = aug.rref();
        assert_eq!(pivots, (0..n).collect::<Vec<_>>(), "matrix must be invertible");
        let mut out = EMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = reduced.at(i, n + j).clone();
            }
        }
        out
    }

    /// Exact Moore-Penrose inverse via full-rank factorization
    /// `A = F G`, `A† = G*(GG*)^{-1}(F*F)^{-1}F*`.
    pub fn mp_inverse(&self) -> EMat {
        let (reduced, pivots) = self.rref();
        let r = pivots.len();
        if r == 0 {
            return EMat::zeros(self.cols, self.rows);
        }
        let mut f = EMat::zeros(self.rows, r);
        for (k, &col) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                *f.at_mut(i, k) = self.at(i, col).clone();
            }
        }
        let mut g = EMat::zeros(r, self.cols);
        for i in 0..r {
            for j in 0..self.cols {
                *g.at_mut(i, j) = reduced.at(i, j).clone();
            }
        }
        assert_eq!(f.mul(&g), *self, "full-rank factorization must reproduce the matrix");
        let gg_inv = g.mul(&g.adjoint()).inverse();
        let ff_inv = f.adjoint().mul(&f).inverse();
        g.adjoint().mul(&gg_inv).mul(&ff_inv).mul(&f.adjoint())
    }
}

/// Exact dual matrix `s + d ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct EDual {
    pub s: EMat,
    pub d: EMat,
}

impl EDual {
    pub fn mul(&self, o: &EDual) -> EDual {
        EDual {
            s: self.s.mul(&o.s),
            d: self.s.mul(&o.d).add(&self.d.mul(&o.s)),
        }
    }

    pub fn adjoint(&self) -> EDual {
        EDual { s: self.s.adjoint(), d: self.d.adjoint() }
    }

    pub fn sub(&self, o: &EDual) -> EDual {
        EDual { s: self.s.sub(&o.s), d: self.d.sub(&o.d) }
    }

    pub fn is_zero(&self) -> bool {
        self.s.is_zero() && self.d.is_zero()
    }
}

/// Essential part by the projector identity; exact.
pub fn exact_essential(a: &EDual) -> EDual {
    let mp = a.s.mp_inverse();
    let left = EMat::identity(a.s.rows).sub(&a.s.mul(&mp));
    let right = EMat::identity(a.s.cols).sub(&mp.mul(&a.s));
    let nonessential_dual = left.mul(&a.d).mul(&right);
    EDual { s: a.s.clone(), d: a.d.sub(&nonessential_dual) }
}

/// Exact NDMPI: the Penrose-type inverse of the essential part, verified
/// against all four defining equations before returning.
pub fn exact_ndmpi(a: &EDual) -> EDual {
    let e = exact_essential(a);
    let mp = e.s.mp_inverse();
    let m = e.s.rows;
    let n = e.s.cols;
    let left = EMat::identity(m).sub(&e.s.mul(&mp));
    let right = EMat::identity(n).sub(&mp.mul(&e.s));
    let mp_adj = mp.adjoint();
    let ed_adj = e.d.adjoint();
    // X_d = −A†A_dA† + A†A†*A_d*(I−AA†) + (I−A†A)A_d*A†*A†
    let term1 = mp.mul(&e.d).mul(&mp);
    let term2 = mp.mul(&mp_adj).mul(&ed_adj).mul(&left);
    let term3 = right.mul(&ed_adj).mul(&mp_adj).mul(&mp);
    let dual = term2.add(&term3).sub(&term1);
    let x = EDual { s: mp, d: dual };

    // exact verification of the four NDMPI equations
    let axa = a.mul(&x).mul(a);
    assert!(axa.sub(&e).is_zero(), "oracle: ÂX̂Â must equal A_e exactly");
    let xax = x.mul(a).mul(&x);
    assert!(xax.sub(&x).is_zero(), "oracle: X̂ÂX̂ must equal X̂ exactly");
    let ax = a.mul(&x);
    assert!(ax.sub(&ax.adjoint()).is_zero(), "oracle: ÂX̂ must be Hermitian exactly");
    let xa = x.mul(a);
    assert!(xa.sub(&xa.adjoint()).is_zero(), "oracle: X̂Â must be Hermitian exactly");
    x
}
