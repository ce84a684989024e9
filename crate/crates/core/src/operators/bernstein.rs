use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::norms::disc_mean_power;
use crate::numeric::next_pow2;
use crate::random::complex_gaussian;
use crate::rng::task_rng;
use crate::series::UnivariatePolynomial;

/// Smallest `C` with `‖Q‖_p^p ≤ 2 ‖Q_r‖_p^p` at `1 - r = C^{-1/p} / n`.
///
/// `‖Q_r‖_p` is non-decreasing in `r`, so the admissible `r` form an
/// interval `[r*, 1]` found by bisection. Returns 0 when `r* = 0`, i.e.
/// when every `C` works.
pub fn bernstein_threshold(q: &UnivariatePolynomial, n: usize, p: f64) -> Result<f64> {
    if n == 0 || !(p > 0.0 && p.is_finite()) {
        return Err(domain("need n ≥ 1 and p > 0"));
    }
    if q.is_zero() {
        return Ok(0.0);
    }
    let grid = next_pow2((8 * (q.degree().max(n) + 1)).max(64));
    let target = disc_mean_power(q, p, grid);
    let ok = |r: f64| 2.0 * disc_mean_power(&q.dilate(r), p, grid) >= target;
    if ok(0.0) {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((n as f64 * (1.0 - hi)).powf(-p))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BernsteinRow {
    pub n: usize,
    pub p: f64,
    pub samples: usize,
    /// Largest threshold over all candidates: the smallest `C` that works
    /// for the whole sample.
    pub c_star: f64,
    /// Same over the random candidates only.
    pub c_random: f64,
    /// Closed form for `z^n`: `(n (1 - 2^{-1/(np)}))^{-p}`.
    pub c_monomial: f64,
    pub witness: String,
}

fn structured(n: usize) -> Vec<(String, UnivariatePolynomial)> {
    let one_plus_z = UnivariatePolynomial::from_real(&[1.0, 1.0]);
    let mut sparse = vec![Complex64::new(0.0, 0.0); n + 1];
    sparse[0] = Complex64::new(1.0, 0.0);
    sparse[n] += Complex64::new(1.0, 0.0);
    vec![
        ("monomial".to_string(), UnivariatePolynomial::monomial(n)),
        ("binomial".to_string(), one_plus_z.power(n as u32)),
        ("one_plus_monomial".to_string(), UnivariatePolynomial::new(sparse)),
    ]
}

/// Empirical constant for each `(n, p)` over structured polynomials and
/// `samples` Gaussian polynomials of degree `n`.
pub fn bernstein_constant_search(ns: &[usize], ps: &[f64], samples: usize, seed: u64) -> Result<Vec<BernsteinRow>> {
    let cells: Vec<(usize, f64)> = ns.iter().flat_map(|&n| ps.iter().map(move |&p| (n, p))).collect();
    cells
        .par_iter()
        .map(|&(n, p)| {
            let mut c_star = 0.0;
            let mut witness = String::from("none");
            for (name, q) in structured(n) {
                let c = bernstein_threshold(&q, n, p)?;
                if c > c_star {
                    c_star = c;
                    witness = name;
                }
            }
            let mut c_random = 0.0;
            for i in 0..samples {
                let mut rng = task_rng(seed, &[n as u64, p.to_bits(), i as u64]);
                let q = UnivariatePolynomial::new((0..=n).map(|_| complex_gaussian(&mut rng)).collect());
                let c = bernstein_threshold(&q, n, p)?;
                c_random = f64::max(c_random, c);
                if c > c_star {
                    c_star = c;
                    witness = format!("random:{i}");
                }
            }
            let c_monomial = (n as f64 * (1.0 - 2f64.powf(-1.0 / (n as f64 * p)))).powf(-p);
            Ok(BernsteinRow { n, p, samples, c_star, c_random, c_monomial, witness })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_threshold_matches_closed_form() {
        for (n, p) in [(8, 0.5), (32, 1.0), (5, 2.0)] {
            let c = bernstein_threshold(&UnivariatePolynomial::monomial(n), n, p).unwrap();
            let exact = (n as f64 * (1.0 - 2f64.powf(-1.0 / (n as f64 * p)))).powf(-p);
            assert!((c - exact).abs() < 1e-9 * exact, "{c} vs {exact}");
        }
    }

    #[test]
    fn constants_accept_every_c() {
        let q = UnivariatePolynomial::from_real(&[3.0]);
        assert_eq!(bernstein_threshold(&q, 4, 0.5).unwrap(), 0.0);
    }
}
