//! Random test polynomials. Coefficients are i.i.d. standard complex
//! Gaussians.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::arithmetic::FactorizationTable;
use crate::error::{domain, Result};
use crate::series::{DirichletPolynomial, UnivariatePolynomial};

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Indices `n ≤ max_index` whose prime factors are among the first
/// `num_primes` primes.
pub fn smooth_support(table: &FactorizationTable, max_index: u64, num_primes: usize) -> Result<Vec<u64>> {
    let primes = table.primes();
    if num_primes > primes.len() {
        return Err(domain("not enough primes in the table"));
    }
    let allowed = &primes[..num_primes];
    let mut out = Vec::new();
    for n in 1..=max_index {
        if table.factorize(n)?.iter().all(|(p, _)| allowed.contains(p)) {
            out.push(n);
        }
    }
    Ok(out)
}

/// Each index of `support` enters independently with probability `density`
/// (at least one term is always kept).
pub fn random_dirichlet<R: Rng + ?Sized>(rng: &mut R, support: &[u64], density: f64) -> Result<DirichletPolynomial> {
    if support.is_empty() {
        return Err(domain("empty support"));
    }
    let mut pairs: Vec<(u64, Complex64)> = Vec::new();
    for &n in support {
        if rng.random::<f64>() < density {
            pairs.push((n, complex_gaussian(rng)));
        }
    }
    if pairs.is_empty() {
        let n = support[rng.random_range(0..support.len())];
        pairs.push((n, complex_gaussian(rng)));
    }
    DirichletPolynomial::from_pairs(pairs)
}

/// Dense polynomial of degree drawn uniformly from `0..=max_degree`.
pub fn random_univariate<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> UnivariatePolynomial {
    let d = rng.random_range(0..=max_degree);
    UnivariatePolynomial::new((0..=d).map(|_| complex_gaussian(rng)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::task_rng;

    #[test]
    fn smooth_support_of_thirty() {
        let t = FactorizationTable::new(100).unwrap();
        let s = smooth_support(&t, 30, 3).unwrap();
        assert_eq!(s, vec![1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 18, 20, 24, 25, 27, 30]);
        let mut rng = task_rng(1, &[]);
        let f = random_dirichlet(&mut rng, &s, 0.5).unwrap();
        assert!(f.iter().all(|(n, _)| s.contains(&n)));
    }
}
