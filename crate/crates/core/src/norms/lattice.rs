use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;

use super::{rounding_floor, NormEstimate, NormMethod};
use crate::error::{config, Result};
use crate::rng::task_rng;
use crate::series::MultivariatePolynomial;

const CBC_SEED: u64 = 0x5EED_1A77;
const CBC_CANDIDATES: usize = 1024;
const MIN_REPLICATIONS: usize = 8;

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn next_prime(n: usize) -> usize {
    (n.max(2)..).find(|&k| is_prime(k)).expect("primes are unbounded")
}

/// `2π^2 B_2(x)`, the Korobov kernel for smoothness 2.
fn kernel(x: f64) -> f64 {
    2.0 * std::f64::consts::PI.powi(2) * (x * x - x + 1.0 / 6.0)
}

/// Greedy CBC state for one `n`; the vector for `d` dimensions is a prefix
/// of the vector for `d + 1`.
struct CbcState {
    omega: Vec<f64>,
    prod: Vec<f64>,
    z: Vec<usize>,
}

impl CbcState {
    fn new(n: usize) -> Self {
        Self { omega: (0..n).map(|k| kernel(k as f64 / n as f64)).collect(), prod: vec![1.0; n], z: Vec::new() }
    }

    fn extend_to(&mut self, dim: usize) {
        let n = self.prod.len();
        while self.z.len() < dim {
            let j = self.z.len();
            let zj = if j == 0 || n <= 2 {
                1
            } else {
                let candidates: Vec<usize> = if n - 1 <= CBC_CANDIDATES {
                    (1..n).collect()
                } else {
                    let mut rng = task_rng(CBC_SEED, &[n as u64, j as u64]);
                    let mut c: Vec<usize> = sample(&mut rng, n - 1, CBC_CANDIDATES).into_iter().map(|i| i + 1).collect();
                    c.sort_unstable();
                    c
                };
                let mut best = (f64::INFINITY, 1usize);
                for c in candidates {
                    let mut e = 0.0;
                    for (k, pk) in self.prod.iter().enumerate() {
                        e += pk * (1.0 + self.omega[(k * c) % n]);
                    }
                    if e < best.0 {
                        best = (e, c);
                    }
                }
                best.1
            };
            for (k, pk) in self.prod.iter_mut().enumerate() {
                *pk *= 1.0 + self.omega[(k * zj) % n];
            }
            self.z.push(zj);
        }
    }
}

/// Component-by-component generating vector for an `n`-point rank-1 lattice
/// in `dim` dimensions (`n` prime), minimizing the worst-case error in the
/// Korobov space of smoothness 2 with unit weights.
pub fn lattice_generating_vector(n: usize, dim: usize) -> Arc<Vec<usize>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Mutex<CbcState>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let state = cache.lock().unwrap().entry(n).or_insert_with(|| Arc::new(Mutex::new(CbcState::new(n)))).clone();
    let mut state = state.lock().unwrap();
    state.extend_to(dim);
    Arc::new(state.z[..dim].to_vec())
}

pub(crate) fn norm_lattice(
    f: &MultivariatePolynomial,
    p: f64,
    total_points: usize,
    replications: usize,
    seed: u64,
) -> Result<NormEstimate> {
    if replications < MIN_REPLICATIONS {
        return Err(config(format!("randomized lattice needs at least {MIN_REPLICATIONS} replications")));
    }
    if total_points == 0 {
        return Err(config("randomized lattice needs at least one point"));
    }
    let n = next_prime(total_points);
    let dim = f.dimension();
    let degrees = f.max_degrees();
    let z = lattice_generating_vector(n, dim.max(1));
    let terms: Vec<(Vec<(usize, usize)>, Complex64)> = f
        .iter()
        .map(|(k, c)| ((0..dim).filter(|&j| k.get(j) != 0).map(|j| (j, k.get(j) as usize)).collect(), c))
        .collect();

    let roots: Vec<Complex64> =
        (0..n).map(|m| Complex64::from_polar(1.0, std::f64::consts::TAU * m as f64 / n as f64)).collect();
    let means: Vec<f64> = (0..replications)
        .into_par_iter()
        .map(|r| {
            let mut rng = task_rng(seed, &[r as u64]);
            let shift: Vec<Complex64> =
                (0..dim).map(|_| Complex64::from_polar(1.0, std::f64::consts::TAU * rng.random::<f64>())).collect();
            let mut powers: Vec<Vec<Complex64>> = degrees.iter().map(|&d| vec![Complex64::new(1.0, 0.0); d as usize + 1]).collect();
            let mut sum = 0.0;
            for k in 0..n {
                for j in 0..dim {
                    let w = roots[(k * z[j]) % n] * shift[j];
                    let pw = &mut powers[j];
                    for e in 1..pw.len() {
                        pw[e] = pw[e - 1] * w;
                    }
                }
                let mut v = Complex64::new(0.0, 0.0);
                for (e, c) in &terms {
                    let mut t = *c;
                    for &(j, ej) in e {
                        t *= powers[j][ej];
                    }
                    v += t;
                }
                sum += if p == 1.0 { v.norm() } else { v.norm().powf(p) };
            }
            sum / n as f64
        })
        .collect();

    let r = replications as f64;
    let mean = means.iter().sum::<f64>() / r;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (r - 1.0);
    let se = (var / r).sqrt();
    let samples = (n * replications) as u64;
    let raw_error = 2.0 * se + rounding_floor(mean, samples);
    Ok(NormEstimate::from_raw(mean, raw_error, p, NormMethod::Qmc, samples, seed))
}
