use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_beta, mellin_integral};
use crate::arithmetic::{FactorizationTable, WeightKind};
use crate::error::{domain, Result};
use crate::numeric::linear_fit;
use crate::series::{euler_product_power, DirichletPolynomial, LocalFactor};

/// Largest support the expanded test function may have.
const MAX_TERMS: f64 = (1u64 << 22) as f64;

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p <= 2.0 {
        Ok(())
    } else {
        Err(domain(format!("p = {p} must lie in (0, 2]")))
    }
}

fn primes_up_to(table: &FactorizationTable, n: u64) -> Result<&[u64]> {
    if n > table.limit() {
        return Err(domain(format!("N = {n} exceeds the sieve limit {}", table.limit())));
    }
    let primes = table.primes();
    Ok(&primes[..primes.partition_point(|&q| q <= n)])
}

/// `(Π_{q ≤ N} (1 - q^{-1/2-s})^{-1})^{2/p}` with every local factor cut at
/// `degree`; the coefficient at `n` is `d_{2/p}(n)/√n` on the kept support.
pub fn dual_test_function(p: f64, n: u64, degree: usize, table: &FactorizationTable) -> Result<DirichletPolynomial> {
    check_p(p)?;
    let primes = primes_up_to(table, n)?;
    if (degree as f64 + 1.0).powi(primes.len() as i32) > MAX_TERMS {
        return Err(domain(format!("support of {}^{} terms is too large", degree + 1, primes.len())));
    }
    let factors: Vec<LocalFactor> = primes
        .iter()
        .map(|&q| LocalFactor {
            prime: q,
            series: vec![Complex64::new(1.0, 0.0), Complex64::new(-(q as f64).powf(-0.5), 0.0)],
        })
        .collect();
    euler_product_power(&factors, -2.0 / p, Some(degree))
}

/// `⟨f, φ_β⟩` for the untruncated product `f` over primes `≤ N`, through
/// the integral representation. Returns the value and a quadrature error.
pub fn euler_pairing(p: f64, beta: f64, n: u64, table: &FactorizationTable) -> Result<(f64, f64)> {
    check_p(p)?;
    check_beta(beta)?;
    let primes = primes_up_to(table, n)?;
    if primes.is_empty() {
        return Ok((1.0, 0.0));
    }
    let logs: Vec<f64> = primes.iter().map(|&q| (q as f64).ln()).collect();
    let alpha = 2.0 / p;
    // f(1/2 + u) - 1 = exp(-α Σ log(1 - q^{-1-u})) - 1.
    let h = |u: f64| {
        let s: f64 = logs.iter().map(|&l| (-(-(1.0 + u) * l).exp()).ln_1p()).sum();
        Complex64::new((-alpha * s).exp_m1(), 0.0)
    };
    let scale = 1.0 / (n.max(3) as f64).ln();
    let (v, err) = mellin_integral(h, beta, scale)?;
    Ok((1.0 + v.re, err))
}

/// `‖f‖_{H^p} = (Π_{q ≤ N} (1 - 1/q)^{-1})^{1/p}`, since `|f|^p = |g|^2`
/// with `g` the product to the first power.
fn test_function_norm(p: f64, primes: &[u64]) -> f64 {
    let log_l2sq: f64 = primes.iter().map(|&q| -(-1.0 / q as f64).ln_1p()).sum();
    (log_l2sq / p).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualRatioRow {
    pub n: u64,
    pub pairing: f64,
    pub pairing_error: f64,
    pub norm: f64,
    pub ratio: f64,
    pub log_ratio: f64,
    pub log_log_n: f64,
    /// `Σ_{n ≤ N} d_{2/p}(n) / (n (log* n)^β)`, the part of the pairing
    /// carried by indices up to `N`.
    pub finite_pairing: f64,
    pub finite_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualRatioScan {
    pub p: f64,
    pub beta: f64,
    pub rows: Vec<DualRatioRow>,
    /// Least-squares slope of `log ratio` against `log log N`.
    pub slope: f64,
    pub intercept: f64,
    pub finite_slope: f64,
    /// `1/p - β`.
    pub predicted: f64,
}

/// `⟨f, φ_β⟩ / ‖f‖_p` for the test functions over primes `≤ N`, `N` from
/// `ns` (increasing, at least two values).
pub fn dual_ratio_scan(p: f64, beta: f64, ns: &[u64], table: &FactorizationTable) -> Result<DualRatioScan> {
    check_p(p)?;
    check_beta(beta)?;
    if ns.len() < 2 || ns.windows(2).any(|w| w[1] <= w[0]) || ns[0] < 3 {
        return Err(domain("need at least two increasing cutoffs, each at least 3"));
    }
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let log_star = |n: u64| if n <= 1 { 1.0 } else { (n as f64).ln() };
    let finite = table.weight_sums_with(&xs, 2.0 / p, WeightKind::D, |n| 1.0 / (n as f64 * log_star(n).powf(beta)))?;
    let mut rows = Vec::with_capacity(ns.len());
    for (&n, &finite_pairing) in ns.iter().zip(&finite) {
        let (pairing, pairing_error) = euler_pairing(p, beta, n, table)?;
        let norm = test_function_norm(p, primes_up_to(table, n)?);
        let ratio = pairing / norm;
        rows.push(DualRatioRow {
            n,
            pairing,
            pairing_error,
            norm,
            ratio,
            log_ratio: ratio.ln(),
            log_log_n: (n as f64).ln().ln(),
            finite_pairing,
            finite_ratio: finite_pairing / norm,
        });
    }
    let lx: Vec<f64> = rows.iter().map(|r| r.log_log_n).collect();
    let ly: Vec<f64> = rows.iter().map(|r| r.log_ratio).collect();
    let lf: Vec<f64> = rows.iter().map(|r| r.finite_ratio.ln()).collect();
    let (slope, intercept) = linear_fit(&lx, &ly).ok_or_else(|| domain("degenerate fit"))?;
    let (finite_slope, _) = linear_fit(&lx, &lf).ok_or_else(|| domain("degenerate fit"))?;
    Ok(DualRatioScan { p, beta, rows, slope, intercept, finite_slope, predicted: 1.0 / p - beta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::pair_h2;

    fn table() -> FactorizationTable {
        FactorizationTable::new(200_000).unwrap()
    }

    #[test]
    fn test_function_coefficients() {
        let t = table();
        let f = dual_test_function(2.0, 5, 2, &t).unwrap();
        assert_eq!(f.num_terms(), 27);
        for (n, a) in f.iter() {
            assert_eq!(900 % n, 0);
            assert!((a.re - 1.0 / (n as f64).sqrt()).abs() < 1e-15);
        }
        let g = dual_test_function(1.0, 7, 3, &t).unwrap();
        for (n, a) in g.iter() {
            let d: f64 = t.factorize_extended(n).unwrap().iter().map(|&(_, e)| e as f64 + 1.0).product();
            assert!((a.re - d / (n as f64).sqrt()).abs() < 1e-14);
        }
        assert!(dual_test_function(1.0, 1000, 3, &t).is_err());
    }

    #[test]
    fn pairing_matches_expanded_product() {
        // Over primes ≤ 3 with deep local truncation the expanded pairing
        // converges to the integral form; the cut tail is below 2^{-23}.
        let t = table();
        let f = dual_test_function(2.0, 3, 24, &t).unwrap();
        let direct = pair_h2(&f, 0.5).unwrap().re;
        let (viaint, err) = euler_pairing(2.0, 0.5, 3, &t).unwrap();
        assert!((direct - viaint).abs() < 1e-6 * viaint, "{direct} vs {viaint}");
        assert!(err < 1e-8);
    }
}
