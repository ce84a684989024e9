use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{config, domain, Result};
use crate::norms::disc_mean_power;
use crate::random::complex_gaussian;
use crate::rng::task_rng;
use crate::series::UnivariatePolynomial;

/// Search settings for [`ck_oracle`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleSettings {
    pub degree: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Circle nodes used during the search.
    pub search_grid: usize,
    /// Circle nodes used to score the final candidates.
    pub final_grid: usize,
    /// Smallest coordinate step before a restart stops.
    pub min_step: f64,
    pub max_sweeps: usize,
}

impl OracleSettings {
    pub fn new(degree: usize, restarts: usize, seed: u64) -> Self {
        Self { degree, restarts, seed, search_grid: 256, final_grid: 1 << 15, min_step: 1e-7, max_sweeps: 4000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub k: usize,
    pub p: f64,
    /// `|c_k| / ‖f‖_p` of the best candidate on the final grid.
    pub value: f64,
    pub restart: usize,
    pub polynomial: UnivariatePolynomial,
}

/// Rotates `f` so that `c_0 ≥ 0` and `c_k ≥ 0` are real.
fn gauge(c: &mut [Complex64], k: usize) {
    let phi = if c[0].norm() > 0.0 { -c[0].arg() } else { 0.0 };
    let theta = if k > 0 && c[k].norm() > 0.0 { (-c[k].arg() - phi) / k as f64 } else { 0.0 };
    for (j, cj) in c.iter_mut().enumerate() {
        *cj *= Complex64::from_polar(1.0, phi + theta * j as f64);
    }
    c[0] = Complex64::new(c[0].re.max(0.0), 0.0);
    if k > 0 {
        c[k] = Complex64::new(c[k].re.max(0.0), 0.0);
    }
}

struct Search<'a> {
    k: usize,
    half_p: f64,
    p: f64,
    roots: &'a [Complex64],
    c: Vec<Complex64>,
    vals: Vec<Complex64>,
}

impl Search<'_> {
    fn m(&self) -> usize {
        self.roots.len()
    }

    fn refresh(&mut self) {
        let m = self.m();
        for (t, v) in self.vals.iter_mut().enumerate() {
            *v = self.c.iter().enumerate().map(|(j, &cj)| cj * self.roots[(j * t) % m]).sum();
        }
    }

    fn mean_with(&self, j: usize, delta: Complex64) -> f64 {
        let m = self.m();
        let mut s = 0.0;
        for (t, v) in self.vals.iter().enumerate() {
            s += (v + delta * self.roots[(j * t) % m]).norm_sqr().powf(self.half_p);
        }
        s / m as f64
    }

    fn objective(&self, ck: f64, mean: f64) -> f64 {
        if ck <= 0.0 || mean <= 0.0 {
            f64::NEG_INFINITY
        } else {
            ck.ln() - mean.ln() / self.p
        }
    }

    fn apply(&mut self, j: usize, delta: Complex64) {
        let m = self.m();
        self.c[j] += delta;
        for (t, v) in self.vals.iter_mut().enumerate() {
            *v += delta * self.roots[(j * t) % m];
        }
    }

    fn normalize(&mut self) {
        let mean = self.mean_with(0, Complex64::new(0.0, 0.0));
        if mean > 0.0 {
            let s = mean.powf(-1.0 / self.p);
            self.c.iter_mut().for_each(|c| *c *= s);
            self.vals.iter_mut().for_each(|v| *v *= s);
        }
    }

    /// Real coordinates: `Re c_j` for all `j`, `Im c_j` off the gauge.
    fn coords(&self) -> Vec<(usize, bool)> {
        (0..self.c.len())
            .flat_map(|j| [(j, false), (j, true)])
            .filter(|&(j, im)| !(im && (j == 0 || j == self.k)))
            .collect()
    }

    /// `-J` and its gradient at the coefficient vector `c`, where
    /// `J = log |c_k| - log(mean |f|^p) / p`.
    fn neg_objective(&self, c: &[Complex64], coords: &[(usize, bool)]) -> (f64, Vec<f64>) {
        let m = self.m();
        let mut vals = vec![Complex64::new(0.0, 0.0); m];
        for (t, v) in vals.iter_mut().enumerate() {
            *v = c.iter().enumerate().map(|(j, &cj)| cj * self.roots[(j * t) % m]).sum();
        }
        let mut mean = 0.0;
        let mut weights = Vec::with_capacity(m);
        for v in &vals {
            let a = v.norm_sqr();
            mean += a.powf(self.half_p);
            weights.push(if a > 0.0 { a.powf(self.half_p - 1.0) } else { 0.0 });
        }
        mean /= m as f64;
        let ck = c[self.k].re;
        if mean <= 0.0 || ck == 0.0 {
            return (f64::INFINITY, vec![0.0; coords.len()]);
        }
        let value = -(ck.abs().ln() - mean.ln() / self.p);
        // d mean / d c_j (complex form): (p/M) Σ_t |v_t|^{p-2} conj(v_t) ω^{jt}.
        let mut grad = Vec::with_capacity(coords.len());
        for &(j, im) in coords {
            let mut g = Complex64::new(0.0, 0.0);
            for t in 0..m {
                g += vals[t].conj() * self.roots[(j * t) % m] * weights[t];
            }
            let dmean = if im { -g.im } else { g.re } * self.p / m as f64;
            let mut d = -dmean / (self.p * mean);
            if j == self.k && !im {
                d += 1.0 / ck;
            }
            grad.push(-d);
        }
        (value, grad)
    }

    /// Quasi-Newton ascent on the coefficients.
    fn quasi_newton(&mut self, max_iter: usize) {
        let coords = self.coords();
        let n = coords.len();
        let pack = |c: &[Complex64]| -> Vec<f64> {
            coords.iter().map(|&(j, im)| if im { c[j].im } else { c[j].re }).collect()
        };
        let unpack = |x: &[f64], len: usize| -> Vec<Complex64> {
            let mut c = vec![Complex64::new(0.0, 0.0); len];
            for (&(j, im), &v) in coords.iter().zip(x) {
                if im {
                    c[j].im = v;
                } else {
                    c[j].re = v;
                }
            }
            c
        };
        let len = self.c.len();
        let mut x = pack(&self.c);
        let (mut fx, mut gx) = self.neg_objective(&self.c, &coords);
        if !fx.is_finite() {
            return;
        }
        let mut h = vec![vec![0.0; n]; n];
        for (i, row) in h.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        let mut quiet = 0;
        for _ in 0..max_iter {
            let d: Vec<f64> = (0..n).map(|i| -(0..n).map(|j| h[i][j] * gx[j]).sum::<f64>()).collect();
            let slope: f64 = d.iter().zip(&gx).map(|(a, b)| a * b).sum();
            if slope >= 0.0 {
                // Not a descent direction: reset the curvature model.
                for (i, row) in h.iter_mut().enumerate() {
                    row.iter_mut().for_each(|v| *v = 0.0);
                    row[i] = 1.0;
                }
                continue;
            }
            let mut step = 1.0;
            let mut accepted = None;
            for _ in 0..60 {
                let xn: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + step * b).collect();
                let (fn_, gn) = self.neg_objective(&unpack(&xn, len), &coords);
                if fn_ <= fx + 1e-4 * step * slope {
                    accepted = Some((xn, fn_, gn));
                    break;
                }
                step *= 0.5;
            }
            let Some((xn, fn_, gn)) = accepted else { break };
            let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
            let y: Vec<f64> = gn.iter().zip(&gx).map(|(a, b)| a - b).collect();
            let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
            if sy > 1e-300 {
                let hy: Vec<f64> = (0..n).map(|i| (0..n).map(|j| h[i][j] * y[j]).sum()).collect();
                let yhy: f64 = y.iter().zip(&hy).map(|(a, b)| a * b).sum();
                let rho = 1.0 / sy;
                for i in 0..n {
                    for j in 0..n {
                        h[i][j] += (1.0 + yhy * rho) * rho * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]);
                    }
                }
            }
            let gain = fx - fn_;
            x = xn;
            fx = fn_;
            gx = gn;
            if gain <= 1e-13 * (1.0 + fx.abs()) {
                quiet += 1;
                if quiet >= 3 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        let mut c = unpack(&x, len);
        gauge(&mut c, self.k);
        self.c = c;
    }

    /// Coordinate ascent with step halving, started at `step`.
    fn pattern(&mut self, initial_step: f64, min_step: f64, max_sweeps: usize) {
        self.refresh();
        self.normalize();
        let zero = Complex64::new(0.0, 0.0);
        let mut obj = self.objective(self.c[self.k].re, self.mean_with(0, zero));
        let coords = self.coords();
        let mut step = initial_step;
        for sweep in 0..max_sweeps {
            let mut improved = false;
            for &(j, im) in &coords {
                for sign in [1.0, -1.0] {
                    let mut h = sign * step;
                    let mut moved = false;
                    loop {
                        let delta = if im { Complex64::new(0.0, h) } else { Complex64::new(h, 0.0) };
                        let gauged = !im && (j == 0 || j == self.k);
                        if gauged && self.c[j].re + h < 0.0 {
                            break;
                        }
                        let ck = if j == self.k && !im { self.c[j].re + h } else { self.c[self.k].re };
                        let trial = self.objective(ck, self.mean_with(j, delta));
                        if trial > obj + 1e-15 * obj.abs() {
                            self.apply(j, delta);
                            obj = trial;
                            moved = true;
                            h *= 2.0;
                        } else {
                            break;
                        }
                    }
                    if moved {
                        improved = true;
                        break;
                    }
                }
            }
            if sweep % 64 == 63 {
                self.refresh();
            }
            self.normalize();
            obj = self.objective(self.c[self.k].re, self.mean_with(0, zero));
            if !improved {
                step *= 0.5;
                if step < min_step {
                    break;
                }
            }
        }
    }
}

/// Lower bound for `C(k,p)`: the best `|c_k| / ‖f‖_p` found by multi-start
/// coordinate search over polynomials of degree `≤ D`.
pub fn ck_oracle(k: usize, p: f64, settings: &OracleSettings) -> Result<OracleResult> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(domain(format!("p = {p} must be positive")));
    }
    let d = settings.degree;
    if d < k {
        return Err(domain(format!("degree {d} cannot carry coefficient {k}")));
    }
    if settings.restarts == 0 || settings.search_grid <= d || settings.final_grid <= d {
        return Err(config("oracle needs restarts and grids finer than the degree"));
    }
    let m = settings.search_grid;
    let roots: Vec<Complex64> =
        (0..m).map(|t| Complex64::from_polar(1.0, std::f64::consts::TAU * t as f64 / m as f64)).collect();

    let candidates: Vec<(f64, UnivariatePolynomial)> = (0..settings.restarts)
        .into_par_iter()
        .map(|r| {
            let mut c = vec![Complex64::new(0.0, 0.0); d + 1];
            if r == 0 {
                c[k] = Complex64::new(1.0, 0.0);
            } else {
                let mut rng = task_rng(settings.seed, &[k as u64, r as u64]);
                c.iter_mut().for_each(|cj| *cj = complex_gaussian(&mut rng));
            }
            gauge(&mut c, k);
            let mut s = Search { k, half_p: p / 2.0, p, roots: &roots, vals: vec![Complex64::new(0.0, 0.0); m], c };
            s.quasi_newton(settings.max_sweeps);
            s.pattern(1e-3, settings.min_step, settings.max_sweeps);
            let poly = UnivariatePolynomial::new(s.c);
            let mean = disc_mean_power(&poly, p, settings.final_grid);
            let value = poly.coefficient(k).norm() / mean.powf(1.0 / p);
            (value, poly)
        })
        .collect();

    let mut best = 0usize;
    for (i, (v, _)) in candidates.iter().enumerate() {
        if *v > candidates[best].0 + 1e-12 {
            best = i;
        }
    }
    let (value, polynomial) = candidates[best].clone();
    Ok(OracleResult { k, p, value, restart: best, polynomial })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_degree_checks() {
        let r = ck_oracle(0, 0.5, &OracleSettings::new(2, 2, 1)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
        assert!(ck_oracle(3, 0.5, &OracleSettings::new(2, 2, 1)).is_err());
    }

    #[test]
    fn gauge_fixes_phases() {
        let mut c = vec![Complex64::new(0.0, 1.0), Complex64::new(1.0, 1.0), Complex64::new(0.0, -2.0)];
        gauge(&mut c, 2);
        assert!(c[0].im.abs() < 1e-15 && c[0].re > 0.0);
        assert!(c[2].im.abs() < 1e-15 && c[2].re > 0.0);
    }
}
