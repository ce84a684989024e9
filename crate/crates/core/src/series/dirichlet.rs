use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Finitely supported Dirichlet series `Σ a_n n^{-s}`; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "super::io::PolynomialJson", into = "super::io::PolynomialJson")]
pub struct DirichletPolynomial {
    coeffs: BTreeMap<u64, Complex64>,
}

impl DirichletPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        let mut f = Self::zero();
        f.add_term(1, c);
        f
    }

    pub fn monomial(n: u64, c: Complex64) -> Result<Self> {
        Self::from_pairs([(n, c)])
    }

    /// Builds a polynomial from `(n, a_n)` pairs, summing repeated indices.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, Complex64)>) -> Result<Self> {
        let mut f = Self::zero();
        for (n, c) in pairs {
            if n == 0 {
                return Err(domain("Dirichlet indices start at 1"));
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(domain(format!("non-finite coefficient at n = {n}")));
            }
            f.add_term(n, c);
        }
        Ok(f)
    }

    /// Real coefficients given densely: `a[0]` is `a_1`.
    pub fn from_dense_real(a: &[f64]) -> Self {
        let mut f = Self::zero();
        for (i, &v) in a.iter().enumerate() {
            f.add_term(i as u64 + 1, Complex64::new(v, 0.0));
        }
        f
    }

    pub(crate) fn add_term(&mut self, n: u64, c: Complex64) {
        debug_assert!(n >= 1);
        let entry = self.coeffs.entry(n).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(&n);
        }
    }

    pub fn coefficient(&self, n: u64) -> Complex64 {
        self.coeffs.get(&n).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&n, &c)| (n, c))
    }

    /// Number of stored (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest index with a nonzero coefficient, `0` for the zero polynomial.
    pub fn length(&self) -> u64 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::zero();
        for (n, a) in self.iter() {
            out.add_term(n, a * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in other.iter() {
            out.add_term(n, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Dirichlet convolution.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (m, a) in self.iter() {
            for (n, b) in other.iter() {
                let mn = m
                    .checked_mul(n)
                    .ok_or_else(|| domain(format!("index overflow in product {m} * {n}")))?;
                out.add_term(mn, a * b);
            }
        }
        Ok(out)
    }

    /// `f^k` by repeated squaring; `k = 0` gives the constant `1`.
    pub fn power(&self, k: u32) -> Result<Self> {
        let mut result = Self::constant(Complex64::new(1.0, 0.0));
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.multiply(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base)?;
            }
        }
        Ok(result)
    }

    /// Keeps the coefficients with index `≤ n`.
    pub fn truncate(&self, n: u64) -> Self {
        Self { coeffs: self.coeffs.range(..=n).map(|(&k, &c)| (k, c)).collect() }
    }

    /// Vertical translation `m^{-s} f(s)`.
    pub fn shift(&self, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(domain("shift factor must be positive"));
        }
        let mut out = Self::zero();
        for (n, c) in self.iter() {
            let k = n
                .checked_mul(m)
                .ok_or_else(|| domain(format!("index overflow in shift {n} * {m}")))?;
            out.add_term(k, c);
        }
        Ok(out)
    }

    /// `f(s) = Σ a_n e^{-s log n}`; exact finite sum.
    pub fn evaluate_halfplane(&self, s: Complex64) -> Complex64 {
        self.iter().map(|(n, c)| c * (-s * (n as f64).ln()).exp()).sum()
    }

    /// `(Σ |a_n|^2)^{1/2}`.
    pub fn coefficient_l2(&self) -> f64 {
        self.iter().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn square_of_binomial() {
        let f = DirichletPolynomial::from_pairs(vec![(1, c(1.0)), (2, c(1.0))]).unwrap();
        let sq = f.power(2).unwrap();
        let expected = DirichletPolynomial::from_pairs(vec![(1, c(1.0)), (2, c(2.0)), (4, c(1.0))]).unwrap();
        assert_eq!(sq, expected);
        assert_eq!(f.multiply(&DirichletPolynomial::constant(c(1.0))).unwrap(), f);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let f = DirichletPolynomial::from_pairs(vec![(3, c(1.0)), (3, c(-1.0)), (5, c(0.0))]).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.length(), 0);
        assert!(DirichletPolynomial::from_pairs(vec![(0, c(1.0))]).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let f = DirichletPolynomial::from_pairs(vec![(1, c(1.0)), (2, c(1.0))]).unwrap();
        assert!((f.evaluate_halfplane(c(1.0)) - c(1.5)).norm() < 1e-15);
        // ζ truncated at 100, tail ∫_100^∞ x^{-2} dx = 0.01.
        let zeta = DirichletPolynomial::from_dense_real(&vec![1.0; 100]);
        let v = zeta.evaluate_halfplane(c(2.0));
        assert!((v.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 0.01);
    }

    #[test]
    fn overflow_is_reported() {
        let f = DirichletPolynomial::monomial(u64::MAX / 2, c(1.0)).unwrap();
        assert!(f.multiply(&DirichletPolynomial::monomial(3, c(1.0)).unwrap()).is_err());
        assert!(f.shift(3).is_err());
    }

    #[test]
    fn truncation_and_shift() {
        let f = DirichletPolynomial::from_dense_real(&[1.0, 1.0, 1.0]);
        assert_eq!(f.truncate(2), DirichletPolynomial::from_dense_real(&[1.0, 1.0]));
        let g = f.shift(5).unwrap();
        assert_eq!(g.length(), 15);
        assert_eq!(g.coefficient(10), c(1.0));
    }
}
