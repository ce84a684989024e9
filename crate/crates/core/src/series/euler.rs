use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::DirichletPolynomial;
use crate::error::{config, domain, Result};

/// One Euler factor `g(q^{-s})` given by the power-series coefficients of `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalFactor {
    pub prime: u64,
    pub series: Vec<Complex64>,
}

fn integer_exponent(alpha: f64) -> Option<u32> {
    let r = alpha.round();
    ((alpha - r).abs() < 1e-12 && r >= 0.0 && r <= u32::MAX as f64).then_some(r as u32)
}

/// Coefficients of `h(x)^α` up to `x^degree` (principal branch of `h_0^α`).
///
/// Uses the recurrence obtained from `h g' = α h' g`:
/// `g_k = (1/(k h_0)) Σ_{j=1}^{k} ((α+1) j - k) h_j g_{k-j}`.
pub fn series_power(h: &[Complex64], alpha: f64, degree: usize) -> Result<Vec<Complex64>> {
    let h0 = *h.first().ok_or_else(|| domain("empty series"))?;
    if h0 == Complex64::new(0.0, 0.0) {
        return Err(domain("series power needs a nonzero constant term"));
    }
    if !alpha.is_finite() {
        return Err(domain("exponent must be finite"));
    }
    let mut g = vec![Complex64::new(0.0, 0.0); degree + 1];
    g[0] = match integer_exponent(alpha) {
        Some(k) => h0.powu(k),
        None => h0.powf(alpha),
    };
    for k in 1..=degree {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..=k.min(h.len() - 1) {
            acc += h[j] * g[k - j] * ((alpha + 1.0) * j as f64 - k as f64);
        }
        g[k] = acc / (h0 * k as f64);
    }
    Ok(g)
}

fn exact_power(h: &[Complex64], k: u32) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for _ in 0..k {
        let mut next = vec![Complex64::new(0.0, 0.0); out.len() + h.len() - 1];
        for (i, &a) in out.iter().enumerate() {
            for (j, &b) in h.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        out = next;
    }
    out
}

/// Expands `Π_j g_j(q_j^{-s})^α` into a Dirichlet polynomial.
///
/// With `degree = None` the exponent must be a nonnegative integer and each
/// factor is raised exactly; otherwise every powered local series is cut at
/// `degree` before the product is formed.
pub fn euler_product_power(
    factors: &[LocalFactor],
    exponent: f64,
    degree: Option<usize>,
) -> Result<DirichletPolynomial> {
    let mut out = DirichletPolynomial::constant(Complex64::new(1.0, 0.0));
    for factor in factors {
        if factor.prime < 2 {
            return Err(domain(format!("local factor at {} is not at a prime", factor.prime)));
        }
        if factor.series.is_empty() {
            return Err(domain("empty local series"));
        }
        let powered = match (integer_exponent(exponent), degree) {
            (Some(k), None) => exact_power(&factor.series, k),
            (Some(k), Some(d)) => {
                let mut v = exact_power(&factor.series, k);
                v.truncate(d + 1);
                v
            }
            (None, Some(d)) => series_power(&factor.series, exponent, d)?,
            (None, None) => {
                return Err(config(format!(
                    "exponent {exponent} is not an integer; a truncation degree is required"
                )))
            }
        };
        let mut pairs = Vec::with_capacity(powered.len());
        let mut q = 1u64;
        for (e, &c) in powered.iter().enumerate() {
            if e > 0 {
                q = q
                    .checked_mul(factor.prime)
                    .ok_or_else(|| domain("support overflow in Euler product"))?;
            }
            pairs.push((q, c));
        }
        out = out.multiply(&DirichletPolynomial::from_pairs(pairs)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn geometric_factors_give_inverse_square_roots() {
        let support = [1u64, 2, 3, 4, 6, 9, 12, 18, 36];
        // (1 - q^{-1/2} x)^{-1} cut at degree 2, via the power recurrence.
        let via_power: Vec<LocalFactor> = [2u64, 3]
            .iter()
            .map(|&q| LocalFactor { prime: q, series: vec![r(1.0), r(-(q as f64).powf(-0.5))] })
            .collect();
        let f = euler_product_power(&via_power, -1.0, Some(2)).unwrap();
        assert_eq!(f.num_terms(), support.len());
        for n in support {
            assert!((f.coefficient(n) - r(1.0 / (n as f64).sqrt())).norm() < 1e-14, "n = {n}");
        }
        // Same product with the geometric series given explicitly.
        let explicit: Vec<LocalFactor> = [2u64, 3]
            .iter()
            .map(|&q| {
                let t = (q as f64).powf(-0.5);
                LocalFactor { prime: q, series: vec![r(1.0), r(t), r(t * t)] }
            })
            .collect();
        let g = euler_product_power(&explicit, 1.0, None).unwrap();
        assert!(f.sub(&g).coefficient_l2() < 1e-14);
    }

    #[test]
    fn binomial_factor_constant_terms() {
        let p: f64 = 0.5;
        let a = (1.0 - p / 2.0).sqrt();
        let b = (p / 2.0).sqrt();
        let factors: Vec<LocalFactor> =
            [2u64, 3].iter().map(|&q| LocalFactor { prime: q, series: vec![r(a), r(b)] }).collect();
        let f = euler_product_power(&factors, 2.0 / p, None).unwrap();
        assert!((f.coefficient(1).re - (1.0 - p / 2.0).powi(4)).abs() < 1e-14);
        assert!((f.coefficient(16).re - 1.0 / 16.0 * (1.0 - p / 2.0).powi(2)).abs() < 1e-14);
    }

    #[test]
    fn real_power_matches_binomial_series() {
        // (1 + x)^{1/2}
        let g = series_power(&[r(1.0), r(1.0)], 0.5, 4).unwrap();
        let expected = [1.0, 0.5, -0.125, 0.0625, -0.0390625];
        for (a, b) in g.iter().zip(expected) {
            assert!((a.re - b).abs() < 1e-15);
        }
        assert!(euler_product_power(&[LocalFactor { prime: 2, series: vec![r(1.0)] }], 0.5, None).is_err());
        assert!(series_power(&[r(0.0), r(1.0)], 0.5, 3).is_err());
    }
}
