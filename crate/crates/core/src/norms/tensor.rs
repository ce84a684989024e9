use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{even_half, rounding_floor, NormEstimate, NormMethod, QuadratureSpec};
use crate::error::{config, Result};
use crate::numeric::next_pow2;
use crate::series::MultivariatePolynomial;

/// Highest dimension evaluated by FFT; above it the grid is summed directly.
const FFT_MAX_DIM: usize = 3;

/// Points per variable: enough to integrate `|F|^p` exactly when `p` is even,
/// otherwise an oversampled grid.
pub(crate) fn default_points(degree: u32, p: f64) -> usize {
    let d = degree as usize;
    if d == 0 {
        return 1;
    }
    match even_half(p) {
        Some(k) => next_pow2(k as usize * d + 1),
        None => next_pow2((8 * (d + 1)).max(32)),
    }
}

/// Values of `F` on the grid `z_j = e^{2πi k_j / M_j}`, row-major with the
/// last variable fastest.
pub(crate) fn grid_values(f: &MultivariatePolynomial, sizes: &[usize]) -> Vec<Complex64> {
    let total: usize = sizes.iter().product();
    let m = sizes.len();
    let mut strides = vec![1usize; m];
    for j in (0..m.saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * sizes[j + 1];
    }
    if m <= FFT_MAX_DIM {
        let mut data = vec![Complex64::new(0.0, 0.0); total];
        for (kappa, c) in f.iter() {
            let idx: usize = (0..m).map(|j| (kappa.get(j) as usize % sizes[j]) * strides[j]).sum();
            data[idx] += c;
        }
        let mut planner = FftPlanner::<f64>::new();
        for j in 0..m {
            let len = sizes[j];
            if len == 1 {
                continue;
            }
            let fft = planner.plan_fft_inverse(len);
            let mut line = vec![Complex64::new(0.0, 0.0); len];
            let outer = total / (len * strides[j]);
            for o in 0..outer {
                for i in 0..strides[j] {
                    let base = o * len * strides[j] + i;
                    for (k, slot) in line.iter_mut().enumerate() {
                        *slot = data[base + k * strides[j]];
                    }
                    fft.process(&mut line);
                    for (k, v) in line.iter().enumerate() {
                        data[base + k * strides[j]] = *v;
                    }
                }
            }
        }
        data
    } else {
        let roots: Vec<Vec<Complex64>> = sizes
            .iter()
            .map(|&n| (0..n).map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64)).collect())
            .collect();
        let terms: Vec<(Vec<usize>, Complex64)> = f
            .iter()
            .map(|(kappa, c)| ((0..m).map(|j| kappa.get(j) as usize).collect(), c))
            .collect();
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![0usize; m];
        for _ in 0..total {
            let mut v = Complex64::new(0.0, 0.0);
            for (e, c) in &terms {
                let mut t = *c;
                for j in 0..m {
                    if e[j] != 0 {
                        t *= roots[j][(idx[j] * e[j]) % sizes[j]];
                    }
                }
                v += t;
            }
            out.push(v);
            for j in (0..m).rev() {
                idx[j] += 1;
                if idx[j] < sizes[j] {
                    break;
                }
                idx[j] = 0;
            }
        }
        out
    }
}

pub(crate) fn norm_tensor(f: &MultivariatePolynomial, p: f64, points: Option<usize>) -> Result<NormEstimate> {
    let degrees = f.max_degrees();
    let mut sizes = Vec::with_capacity(degrees.len());
    for &d in &degrees {
        let n = match points {
            Some(n) => {
                if n < d as usize + 1 {
                    return Err(config(format!("{n} grid points cannot resolve degree {d}")));
                }
                if d == 0 { 1 } else { n }
            }
            None => default_points(d, p),
        };
        sizes.push(n);
    }
    let total = sizes.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n)).unwrap_or(usize::MAX);
    if total > QuadratureSpec::MAX_GRID_POINTS {
        return Err(config(format!("tensor grid of {total} points exceeds the budget")));
    }
    let values = grid_values(f, &sizes);
    let powered: Vec<f64> = values.iter().map(|v| v.norm().powf(p)).collect();
    let full = powered.iter().sum::<f64>() / total as f64;

    let exact_grid = even_half(p)
        .map(|k| degrees.iter().zip(&sizes).all(|(&d, &n)| n > k as usize * d as usize))
        .unwrap_or(false)
        || f.num_terms() <= 1;
    let mut raw_error = rounding_floor(full, total as u64);
    if !exact_grid {
        raw_error += (full - coarse_mean(&powered, &sizes)).abs();
    }
    Ok(NormEstimate::from_raw(full, raw_error, p, NormMethod::Qmc, total as u64, 0))
}

/// Mean over the sub-grid of points whose indices are all even.
fn coarse_mean(values: &[f64], sizes: &[usize]) -> f64 {
    let m = sizes.len();
    let mut idx = vec![0usize; m];
    let mut sum = 0.0;
    let mut count = 0usize;
    for &v in values {
        if idx.iter().zip(sizes).all(|(&i, &n)| n % 2 == 1 || i % 2 == 0) {
            sum += v;
            count += 1;
        }
        for j in (0..m).rev() {
            idx[j] += 1;
            if idx[j] < sizes[j] {
                break;
            }
            idx[j] = 0;
        }
    }
    sum / count.max(1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::MultiIndex;

    fn poly(terms: &[(&[u32], f64)]) -> MultivariatePolynomial {
        MultivariatePolynomial::from_terms(
            terms.iter().map(|(k, c)| (MultiIndex::new(k.to_vec()), Complex64::new(*c, 0.0))),
        )
    }

    #[test]
    fn grid_values_match_direct_evaluation() {
        let f = poly(&[(&[], 1.0), (&[2, 1], 0.5), (&[0, 0, 3], -2.0), (&[1, 0, 0, 1], 0.25)]);
        for sizes in [vec![4, 2, 4, 2], vec![4, 4, 8, 4]] {
            let vals = grid_values(&f, &sizes);
            let mut idx = vec![0usize; 4];
            for v in vals {
                let theta: Vec<f64> =
                    idx.iter().zip(&sizes).map(|(&k, &n)| std::f64::consts::TAU * k as f64 / n as f64).collect();
                assert!((v - f.evaluate_torus(&theta).unwrap()).norm() < 1e-12);
                for j in (0..4).rev() {
                    idx[j] += 1;
                    if idx[j] < sizes[j] {
                        break;
                    }
                    idx[j] = 0;
                }
            }
        }
        let g = f.abschnitt(3);
        let sizes = vec![4, 2, 4];
        let vals = grid_values(&g, &sizes);
        let theta = [std::f64::consts::TAU / 4.0, std::f64::consts::PI, 0.0];
        assert!((vals[8 + 4] - g.evaluate_torus(&theta).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn examples() {
        let f = poly(&[(&[], 1.0), (&[1], 2.0)]);
        let e = norm_tensor(&f, 2.0, None).unwrap();
        assert!((e.value - 5f64.sqrt()).abs() < 1e-12 && e.error > 0.0);
        let c = poly(&[(&[], 3.0)]);
        for p in [0.3, 1.0, 2.5] {
            assert!((norm_tensor(&c, p, None).unwrap().value - 3.0).abs() < 1e-14);
        }
        assert!(norm_tensor(&f, 2.0, Some(1)).is_err());
        assert_eq!(norm_tensor(&MultivariatePolynomial::zero(), 1.0, None).unwrap().value, 0.0);
    }
}
