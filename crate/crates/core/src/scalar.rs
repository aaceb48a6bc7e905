//! Dual real and dual complex scalars.
//!
//! A dual number `a_s + a_d ε` has a standard part `a_s` and a dual part
//! `a_d`, with `ε² = 0`. Dual reals carry the lexicographic total order
//! (standard part first, then dual part); dual complex numbers are
//! deliberately unordered, which is why the two are separate types.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A dual number with real standard and dual parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualReal {
    #[serde(rename = "std")]
    pub std_part: f64,
    #[serde(rename = "dual")]
    pub dual_part: f64,
}

impl DualReal {
    pub const ZERO: DualReal = DualReal { std_part: 0.0, dual_part: 0.0 };
    pub const ONE: DualReal = DualReal { std_part: 1.0, dual_part: 0.0 };

    pub fn new(std_part: f64, dual_part: f64) -> Self {
        DualReal { std_part, dual_part }
    }

    /// Appreciable means the standard part is nonzero (exact test).
    pub fn is_appreciable(&self) -> bool {
        self.std_part != 0.0
    }

    /// Positive under the total order: `a_s > 0`, or `a_s = 0` and `a_d > 0`.
    pub fn is_positive(&self) -> bool {
        self.compare(&DualReal::ZERO) == Ordering::Greater
    }

    /// Lexicographic total order: compare standard parts, tie-break on dual
    /// parts.
    pub fn compare(&self, other: &DualReal) -> Ordering {
        match self.std_part.partial_cmp(&other.std_part).expect("non-finite dual real") {
            Ordering::Equal => {
                self.dual_part.partial_cmp(&other.dual_part).expect("non-finite dual real")
            }
            ord => ord,
        }
    }

    /// Square root of a positive appreciable dual real, or of exact zero.
    ///
    /// `√a = √a_s + a_d/(2√a_s) ε`, and `√0 = 0`. Anything else (negative
    /// standard part, or a nonzero infinitesimal) has no defined root.
    pub fn sqrt(&self) -> Result<DualReal> {
        if self.std_part == 0.0 && self.dual_part == 0.0 {
            return Ok(DualReal::ZERO);
        }
        if self.std_part <= 0.0 {
            return Err(Error::NegativeOrInfinitesimalSqrt);
        }
        let root = self.std_part.sqrt();
        Ok(DualReal::new(root, self.dual_part / (2.0 * root)))
    }

    /// Reciprocal; defined only for appreciable values.
    pub fn recip(&self) -> Option<DualReal> {
        if !self.is_appreciable() {
            return None;
        }
        let inv = 1.0 / self.std_part;
        Some(DualReal::new(inv, -self.dual_part * inv * inv))
    }

    pub fn to_complex(&self) -> DualComplex {
        DualComplex::new(Complex64::new(self.std_part, 0.0), Complex64::new(self.dual_part, 0.0))
    }
}

impl PartialOrd for DualReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl fmt::Display for DualReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}ε", self.std_part, self.dual_part)
    }
}

impl Add for DualReal {
    type Output = DualReal;
    fn add(self, rhs: DualReal) -> DualReal {
        DualReal::new(self.std_part + rhs.std_part, self.dual_part + rhs.dual_part)
    }
}

impl Sub for DualReal {
    type Output = DualReal;
    fn sub(self, rhs: DualReal) -> DualReal {
        DualReal::new(self.std_part - rhs.std_part, self.dual_part - rhs.dual_part)
    }
}

impl Neg for DualReal {
    type Output = DualReal;
    fn neg(self) -> DualReal {
        DualReal::new(-self.std_part, -self.dual_part)
    }
}

impl Mul for DualReal {
    type Output = DualReal;
    fn mul(self, rhs: DualReal) -> DualReal {
        DualReal::new(
            self.std_part * rhs.std_part,
            self.std_part * rhs.dual_part + self.dual_part * rhs.std_part,
        )
    }
}

/// A dual number with complex standard and dual parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualComplex {
    pub std_part: Complex64,
    pub dual_part: Complex64,
}

impl DualComplex {
    pub const ZERO: DualComplex = DualComplex {
        std_part: Complex64 { re: 0.0, im: 0.0 },
        dual_part: Complex64 { re: 0.0, im: 0.0 },
    };
    pub const ONE: DualComplex = DualComplex {
        std_part: Complex64 { re: 1.0, im: 0.0 },
        dual_part: Complex64 { re: 0.0, im: 0.0 },
    };

    pub fn new(std_part: Complex64, dual_part: Complex64) -> Self {
        DualComplex { std_part, dual_part }
    }

    pub fn from_real_parts(std_part: f64, dual_part: f64) -> Self {
        DualComplex::new(Complex64::new(std_part, 0.0), Complex64::new(dual_part, 0.0))
    }

    /// Appreciable means the standard part is nonzero (exact test).
    pub fn is_appreciable(&self) -> bool {
        self.std_part != Complex64::new(0.0, 0.0)
    }

    /// Componentwise complex conjugate: `(a_s + a_d ε)* = ā_s + ā_d ε`.
    pub fn conj(&self) -> DualComplex {
        DualComplex::new(self.std_part.conj(), self.dual_part.conj())
    }

    /// Integer power: `a^n = a_s^n + n a_s^{n-1} a_d ε`.
    pub fn powi(&self, n: u32) -> DualComplex {
        let s = self.std_part.powu(n);
        let d = if n == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            (n as f64) * self.std_part.powu(n - 1) * self.dual_part
        };
        DualComplex::new(s, d)
    }

    /// Modulus as a dual real.
    ///
    /// `|a| = |a_s| + (a_s ā_d + a_d ā_s)/(2|a_s|) ε` when appreciable,
    /// `|a_d| ε` otherwise.
    pub fn modulus(&self) -> DualReal {
        if self.is_appreciable() {
            let mag = self.std_part.norm();
            let cross = self.std_part * self.dual_part.conj() + self.dual_part * self.std_part.conj();
            DualReal::new(mag, cross.re / (2.0 * mag))
        } else {
            DualReal::new(0.0, self.dual_part.norm())
        }
    }

    /// Reciprocal; defined only for appreciable values.
    pub fn recip(&self) -> Option<DualComplex> {
        if !self.is_appreciable() {
            return None;
        }
        let inv = self.std_part.inv();
        Some(DualComplex::new(inv, -inv * self.dual_part * inv))
    }
}

impl fmt::Display for DualComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+({})ε", self.std_part, self.dual_part)
    }
}

impl From<DualReal> for DualComplex {
    fn from(v: DualReal) -> Self {
        v.to_complex()
    }
}

impl Add for DualComplex {
    type Output = DualComplex;
    fn add(self, rhs: DualComplex) -> DualComplex {
        DualComplex::new(self.std_part + rhs.std_part, self.dual_part + rhs.dual_part)
    }
}

impl Sub for DualComplex {
    type Output = DualComplex;
    fn sub(self, rhs: DualComplex) -> DualComplex {
        DualComplex::new(self.std_part - rhs.std_part, self.dual_part - rhs.dual_part)
    }
}

impl Neg for DualComplex {
    type Output = DualComplex;
    fn neg(self) -> DualComplex {
        DualComplex::new(-self.std_part, -self.dual_part)
    }
}

impl Mul for DualComplex {
    type Output = DualComplex;
    fn mul(self, rhs: DualComplex) -> DualComplex {
        DualComplex::new(
            self.std_part * rhs.std_part,
            self.std_part * rhs.dual_part + self.dual_part * rhs.std_part,
        )
    }
}

/// Division by an appreciable scalar. Panics when the divisor is
/// infinitesimal: dual numbers with zero standard part have no inverse.
impl Div for DualComplex {
    type Output = DualComplex;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: DualComplex) -> DualComplex {
        let inv = rhs.recip().expect("division by an infinitesimal dual number");
        self * inv
    }
}
