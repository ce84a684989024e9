use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Exponent vector `(κ_1, …, κ_m)` with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Self(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of `z_{j+1}` (0-based `j`).
    pub fn get(&self, j: usize) -> u32 {
        self.0.get(j).copied().unwrap_or(0)
    }

    /// Number of leading positions up to the last nonzero exponent.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        Self::new((0..n).map(|j| self.get(j) + other.get(j)).collect())
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self::new(v)
    }
}

impl From<MultiIndex> for Vec<u32> {
    fn from(k: MultiIndex) -> Self {
        k.0
    }
}

/// Polynomial `Σ c_κ z^κ` in finitely many variables.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MultivariatePolynomial {
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl MultivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        let mut out = Self::zero();
        out.add_term(MultiIndex::default(), c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MultiIndex, Complex64)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, kappa: MultiIndex, c: Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let entry = self.terms.entry(kappa.clone()).or_insert(zero);
        *entry += c;
        if *entry == zero {
            self.terms.remove(&kappa);
        }
    }

    pub fn coefficient(&self, kappa: &MultiIndex) -> Complex64 {
        self.terms.get(kappa).copied().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coefficient(&MultiIndex::default())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, Complex64)> + '_ {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest variable index in use.
    pub fn dimension(&self) -> usize {
        self.terms.keys().map(MultiIndex::len).max().unwrap_or(0)
    }

    /// Degree in each variable `z_1, …, z_m`.
    pub fn max_degrees(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.dimension()];
        for k in self.terms.keys() {
            for (d, &e) in out.iter_mut().zip(k.exponents()) {
                *d = (*d).max(e);
            }
        }
        out
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(MultiIndex::total_degree).max().unwrap_or(0)
    }

    /// Sets `z_j = 0` for all `j > m`.
    pub fn abschnitt(&self, m: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.len() <= m)
                .map(|(k, &c)| (k.clone(), c))
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_terms(self.iter().map(|(k, a)| (k.clone(), a * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                out.add_term(a.add(b), x * y);
            }
        }
        out
    }

    /// Evaluates at `z ∈ ℂ^m`; `z` must cover every variable in use.
    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() < self.dimension() {
            return Err(domain(format!(
                "point has {} coordinates, polynomial uses {}",
                z.len(),
                self.dimension()
            )));
        }
        Ok(self
            .iter()
            .map(|(k, c)| {
                k.exponents()
                    .iter()
                    .zip(z)
                    .fold(c, |acc, (&e, &zj)| acc * zj.powu(e))
            })
            .sum())
    }

    /// Evaluation on the polytorus, `z_j = e^{iθ_j}`.
    pub fn evaluate_torus(&self, theta: &[f64]) -> Result<Complex64> {
        let z: Vec<Complex64> = theta.iter().map(|&t| super::unimodular(t)).collect();
        self.evaluate(&z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_index_trims() {
        assert_eq!(MultiIndex::new(vec![1, 0, 0]).exponents(), &[1]);
        assert!(MultiIndex::new(vec![0, 0]).is_empty());
        assert_eq!(MultiIndex::new(vec![1]).add(&MultiIndex::new(vec![0, 2])).exponents(), &[1, 2]);
    }

    #[test]
    fn evaluate_product_of_variables() {
        let f = MultivariatePolynomial::from_terms([(MultiIndex::new(vec![1, 1]), Complex64::new(1.0, 0.0))]);
        let v = f.evaluate(&[Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0)]).unwrap();
        assert!((v - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!(f.evaluate(&[Complex64::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn degrees_and_dimension() {
        let f = MultivariatePolynomial::from_terms([
            (MultiIndex::new(vec![3]), Complex64::new(1.0, 0.0)),
            (MultiIndex::new(vec![0, 0, 2]), Complex64::new(1.0, 0.0)),
        ]);
        assert_eq!(f.dimension(), 3);
        assert_eq!(f.max_degrees(), vec![3, 0, 2]);
        assert_eq!(f.total_degree(), 3);
    }
}
