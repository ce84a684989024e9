//! Dirichlet polynomials and their Bohr lifts.
//!
//! A Dirichlet polynomial `Σ a_n n^{-s}` is stored sparsely by index. The
//! Bohr lift substitutes `p_j^{-s} ↦ z_j`, turning it into a polynomial on the
//! polytorus whose monomial exponents are the prime factorizations of the
//! indices.

mod dirichlet;
mod euler;
mod io;
mod multivariate;
mod univariate;

pub use dirichlet::DirichletPolynomial;
pub use euler::{euler_product_power, series_power, LocalFactor};
pub use io::{parse_polynomial_json, parse_polynomial_text};
pub use multivariate::{MultiIndex, MultivariatePolynomial};
pub use univariate::UnivariatePolynomial;

use num_complex::Complex64;

use crate::arithmetic::FactorizationTable;
use crate::error::{domain, Result};

/// Lifts `f` to the polytorus: the coefficient of `z^{κ(n)}` is `a_n`.
/// Indices beyond the sieve are accepted when their prime factors are
/// tabulated.
pub fn bohr_lift(f: &DirichletPolynomial, table: &FactorizationTable) -> Result<MultivariatePolynomial> {
    let mut out = MultivariatePolynomial::zero();
    for (n, c) in f.iter() {
        let mut exps: Vec<u32> = Vec::new();
        for (p, e) in table.factorize_extended(n)? {
            let j = table.prime_index(p).expect("sieve primes are indexed");
            if exps.len() <= j {
                exps.resize(j + 1, 0);
            }
            exps[j] = e;
        }
        out.add_term(MultiIndex::new(exps), c);
    }
    Ok(out)
}

/// Inverse of [`bohr_lift`]: variable `z_j` becomes `p_j^{-s}`.
pub fn bohr_unlift(lifted: &MultivariatePolynomial, table: &FactorizationTable) -> Result<DirichletPolynomial> {
    let primes = table.primes();
    let mut pairs = Vec::with_capacity(lifted.num_terms());
    for (kappa, c) in lifted.iter() {
        let mut n = 1u64;
        for (j, &e) in kappa.exponents().iter().enumerate() {
            let p = *primes
                .get(j)
                .ok_or_else(|| domain(format!("variable z_{} has no prime in the sieve", j + 1)))?;
            for _ in 0..e {
                n = n
                    .checked_mul(p)
                    .ok_or_else(|| domain("index overflow while unlifting"))?;
            }
        }
        pairs.push((n, c));
    }
    DirichletPolynomial::from_pairs(pairs)
}

/// Truncation `A_m F`: sets `z_{m+1} = z_{m+2} = … = 0`.
pub fn abschnitt(lifted: &MultivariatePolynomial, m: usize) -> MultivariatePolynomial {
    lifted.abschnitt(m)
}

/// `Σ_{n ≤ terms} n^{-x}` plus the integral tail bound `∫_{terms}^∞ t^{-x} dt`,
/// an upper bound for `ζ(x)` when `x > 1`.
pub fn zeta_upper_bound(x: f64, terms: u64) -> Result<f64> {
    if !(x > 1.0) || terms == 0 {
        return Err(domain("zeta bound needs x > 1 and at least one term"));
    }
    let head: f64 = (1..=terms).map(|n| (n as f64).powf(-x)).sum();
    Ok(head + (terms as f64).powf(1.0 - x) / (x - 1.0))
}

/// Shorthand used throughout for the complex unit `e^{iθ}`.
pub(crate) fn unimodular(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn lift_examples() {
        let t = FactorizationTable::new(1000).unwrap();
        let f = DirichletPolynomial::monomial(6, c(1.0)).unwrap();
        let lifted = bohr_lift(&f, &t).unwrap();
        assert_eq!(lifted.coefficient(&MultiIndex::new(vec![1, 1])), c(1.0));
        assert_eq!(lifted.num_terms(), 1);

        let f = DirichletPolynomial::from_pairs(vec![(1, c(1.0)), (2, c(2.0)), (12, c(1.0))]).unwrap();
        let lifted = bohr_lift(&f, &t).unwrap();
        assert_eq!(lifted.coefficient(&MultiIndex::new(vec![])), c(1.0));
        assert_eq!(lifted.coefficient(&MultiIndex::new(vec![1])), c(2.0));
        assert_eq!(lifted.coefficient(&MultiIndex::new(vec![2, 1])), c(1.0));
        assert_eq!(bohr_unlift(&lifted, &t).unwrap(), f);
        assert_eq!(lifted.dimension(), 2);
    }

    #[test]
    fn lift_beyond_sieve_fails() {
        let t = FactorizationTable::new(100).unwrap();
        let f = DirichletPolynomial::monomial(101, c(1.0)).unwrap();
        assert!(bohr_lift(&f, &t).is_err());
    }

    #[test]
    fn abschnitt_examples() {
        let t = FactorizationTable::new(1000).unwrap();
        let f = DirichletPolynomial::from_pairs(vec![(1, c(1.0)), (2, c(2.0)), (12, c(1.0))]).unwrap();
        let lifted = bohr_lift(&f, &t).unwrap();
        let a1 = abschnitt(&lifted, 1);
        assert_eq!(bohr_unlift(&a1, &t).unwrap(), DirichletPolynomial::from_pairs(vec![(1, c(1.0)), (2, c(2.0))]).unwrap());
        assert_eq!(abschnitt(&lifted, lifted.dimension()), lifted);
        let a0 = abschnitt(&lifted, 0);
        assert_eq!(a0.num_terms(), 1);
        assert_eq!(a0.constant_term(), c(1.0));
    }

    #[test]
    fn zeta_bound_brackets_pi_squared_over_six() {
        let z = zeta_upper_bound(2.0, 1000).unwrap();
        let exact = std::f64::consts::PI.powi(2) / 6.0;
        assert!(z >= exact && z - exact < 1e-5);
    }
}
