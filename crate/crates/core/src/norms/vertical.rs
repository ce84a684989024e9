use num_complex::Complex64;

use super::{check_p, NormEstimate, NormMethod};
use crate::error::{config, domain, Result};
use crate::series::DirichletPolynomial;

/// Re-anchor the rotating phasors this often to bound drift.
const RESYNC: usize = 512;

/// Largest admissible trapezoid step, `π / (8 log N)`.
pub fn vertical_step_limit(f: &DirichletPolynomial) -> f64 {
    let n = f.length();
    if n <= 1 {
        f64::INFINITY
    } else {
        std::f64::consts::PI / (8.0 * (n as f64).ln())
    }
}

/// `(1/2T) ∫_{-T}^{T} |f(it)|^p dt` by the trapezoid rule, raised to `1/p`.
///
/// The error field is 0: how the average approaches the norm as `T` grows is
/// what a `T`-sweep measures.
pub fn norm_vertical(f: &DirichletPolynomial, p: f64, t_max: f64, step: Option<f64>) -> Result<NormEstimate> {
    check_p(p)?;
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(domain("T must be positive and finite"));
    }
    let limit = vertical_step_limit(f);
    let h_req = match step {
        Some(h) if !(h > 0.0) => return Err(config("step must be positive")),
        Some(h) if h > limit => {
            return Err(config(format!("step {h} exceeds the resolution limit {limit}")));
        }
        Some(h) => h,
        None => limit.min(2.0 * t_max),
    };
    let intervals = ((2.0 * t_max / h_req).ceil() as usize).max(1);
    let h = 2.0 * t_max / intervals as f64;
    let terms: Vec<(f64, Complex64)> = f.iter().map(|(n, c)| ((n as f64).ln(), c)).collect();

    let mut sum = 0.0;
    let mut phasors: Vec<Complex64> = Vec::new();
    let steps: Vec<Complex64> = terms.iter().map(|&(l, _)| Complex64::from_polar(1.0, -l * h)).collect();
    for i in 0..=intervals {
        if i % RESYNC == 0 {
            let t = -t_max + i as f64 * h;
            phasors = terms.iter().map(|&(l, c)| c * Complex64::from_polar(1.0, -l * t)).collect();
        }
        let v: Complex64 = phasors.iter().sum();
        let w = if i == 0 || i == intervals { 0.5 } else { 1.0 };
        sum += w * v.norm().powf(p);
        for (ph, st) in phasors.iter_mut().zip(&steps) {
            *ph *= st;
        }
    }
    let mean = sum * h / (2.0 * t_max);
    let mut e = NormEstimate::from_raw(mean, 0.0, p, NormMethod::VerticalLine, intervals as u64 + 1, 0);
    e.error = 0.0;
    Ok(e)
}
