use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DirichletPolynomial, MultiIndex, MultivariatePolynomial};
use crate::error::{domain, Result};

/// Dense one-variable polynomial `Σ_{k ≤ D} c_k z^k`; trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct UnivariatePolynomial {
    coeffs: Vec<Complex64>,
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); k + 1];
        c[k] = Complex64::new(1.0, 0.0);
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Degree; `0` for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `f_r(z) = f(rz)`.
    pub fn dilate(&self, r: f64) -> Self {
        let mut rk = 1.0;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            out.push(c * rk);
            rk *= r;
        }
        Self::new(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn power(&self, k: u32) -> Self {
        (0..k).fold(Self::from_real(&[1.0]), |acc, _| acc.multiply(self))
    }

    /// Sum of squared moduli of the coefficients.
    pub fn l2_squared(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// The polynomial in `z_1`.
    pub fn to_multivariate(&self) -> MultivariatePolynomial {
        MultivariatePolynomial::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (MultiIndex::new(vec![k as u32]), c)),
        )
    }

    /// Substitutes `z = q^{-s}`.
    pub fn to_dirichlet(&self, q: u64) -> Result<DirichletPolynomial> {
        let mut pairs = Vec::with_capacity(self.coeffs.len());
        let mut n = 1u64;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                n = n.checked_mul(q).ok_or_else(|| domain("index overflow in substitution"))?;
            }
            pairs.push((n, c));
        }
        DirichletPolynomial::from_pairs(pairs)
    }
}
