use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::norms::{disc_mean_power, norm_disc, NormEstimate};
use crate::numeric::next_pow2;
use crate::random::complex_gaussian;
use crate::rng::task_rng;
use crate::series::UnivariatePolynomial;

/// `‖f_r‖_{H^q}` against `‖f‖_{H^p}` with `f_r(z) = f(rz)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeisslerCheck {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub lhs: NormEstimate,
    pub rhs: NormEstimate,
    pub holds: bool,
}

fn check_args(p: f64, q: f64, r: f64) -> Result<()> {
    if !(p > 0.0 && q >= p && q.is_finite()) {
        return Err(domain(format!("need 0 < p ≤ q, got p = {p}, q = {q}")));
    }
    if !(0.0..=1.0).contains(&r) {
        return Err(domain(format!("dilation r = {r} outside [0, 1]")));
    }
    Ok(())
}

pub fn weissler_check(f: &UnivariatePolynomial, p: f64, q: f64, r: f64) -> Result<WeisslerCheck> {
    check_args(p, q, r)?;
    let lhs = norm_disc(&f.dilate(r), q, None)?;
    let rhs = norm_disc(f, p, None)?;
    let holds = lhs.value <= rhs.value + lhs.error + rhs.error + 1e-12 * rhs.value;
    Ok(WeisslerCheck { p, q, r, lhs, rhs, holds })
}

/// Best candidate of a search for `‖f_r‖_q > ‖f‖_p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeisslerSearch {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    /// `‖f_r‖_q / ‖f‖_p` of the best candidate on the search grid.
    pub best_ratio: f64,
    pub restart: usize,
    pub polynomial: UnivariatePolynomial,
    /// The best candidate re-checked with error bars.
    pub check: WeisslerCheck,
    /// A violation survives the error bars.
    pub found: bool,
}

fn log_ratio(c: &[Complex64], p: f64, q: f64, r: f64, grid: usize) -> f64 {
    let f = UnivariatePolynomial::new(c.to_vec());
    if f.is_zero() {
        return f64::NEG_INFINITY;
    }
    disc_mean_power(&f.dilate(r), q, grid).ln() / q - disc_mean_power(&f, p, grid).ln() / p
}

/// Coordinate ascent on the real and imaginary parts of the coefficients.
fn ascend(mut c: Vec<Complex64>, p: f64, q: f64, r: f64, grid: usize) -> (f64, Vec<Complex64>) {
    let mut best = log_ratio(&c, p, q, r, grid);
    let mut step = 0.25;
    let mut sweeps = 0;
    while step > 1e-6 && sweeps < 2000 {
        sweeps += 1;
        let mut improved = false;
        for i in 0..2 * c.len() {
            for sign in [1.0, -1.0] {
                let mut trial = c.clone();
                let delta = if i % 2 == 0 { Complex64::new(sign * step, 0.0) } else { Complex64::new(0.0, sign * step) };
                trial[i / 2] += delta;
                let v = log_ratio(&trial, p, q, r, grid);
                if v > best {
                    best = v;
                    c = trial;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (best, c)
}

/// Looks for a polynomial of degree `≤ degree` with `‖f_r‖_q > ‖f‖_p`.
/// Restart 0 starts from `1 + z/10`; the others from Gaussian draws.
pub fn weissler_violation_search(
    p: f64,
    q: f64,
    r: f64,
    degree: usize,
    restarts: usize,
    seed: u64,
) -> Result<WeisslerSearch> {
    check_args(p, q, r)?;
    if degree == 0 || restarts == 0 {
        return Err(domain("search needs positive degree and restarts"));
    }
    let grid = next_pow2((8 * (degree + 1)).max(64));
    let runs: Vec<(f64, Vec<Complex64>)> = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let start: Vec<Complex64> = if i == 0 {
                let mut v = vec![Complex64::new(0.0, 0.0); degree + 1];
                v[0] = Complex64::new(1.0, 0.0);
                v[1] = Complex64::new(0.1, 0.0);
                v
            } else {
                let mut rng = task_rng(seed, &[i as u64]);
                (0..=degree).map(|_| complex_gaussian(&mut rng)).collect()
            };
            ascend(start, p, q, r, grid)
        })
        .collect();
    let mut restart = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.0 > runs[restart].0 {
            restart = i;
        }
    }
    let (value, coeffs) = runs[restart].clone();
    let polynomial = UnivariatePolynomial::new(coeffs);
    let check = weissler_check(&polynomial, p, q, r)?;
    Ok(WeisslerSearch { p, q, r, best_ratio: value.exp(), restart, polynomial, found: !check.holds, check })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_plus_z_example() {
        let f = UnivariatePolynomial::from_real(&[1.0, 1.0]);
        let c = weissler_check(&f, 2.0, 4.0, std::f64::consts::FRAC_1_SQRT_2).unwrap();
        assert!((c.lhs.value - 3.25f64.powf(0.25)).abs() < 1e-13);
        assert!((c.rhs.value - 2f64.sqrt()).abs() < 1e-14);
        assert!(c.holds);
    }

    #[test]
    fn degenerate_dilations() {
        let f = UnivariatePolynomial::from_real(&[0.5, -1.0, 0.25]);
        let c = weissler_check(&f, 1.0, 1.0, 1.0).unwrap();
        assert!((c.lhs.value - c.rhs.value).abs() < 1e-15 && c.holds);
        let z = weissler_check(&f, 1.0, 3.0, 0.0).unwrap();
        assert!((z.lhs.value - 0.5).abs() < 1e-15 && z.holds);
    }

    #[test]
    fn violation_beyond_threshold() {
        let s = weissler_violation_search(2.0, 4.0, 0.5f64.sqrt() + 0.05, 3, 4, 1).unwrap();
        assert!(s.found && s.best_ratio > 1.0);
    }
}
