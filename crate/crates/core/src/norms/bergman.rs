use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{rounding_floor, NormEstimate, NormMethod};
use crate::error::{config, domain, Result};
use crate::numeric::composite_gauss;
use crate::series::DirichletPolynomial;

const PANEL_ORDER: usize = 16;

/// Truncated domain `1/2 < σ ≤ sigma_max`, `|t| ≤ t_max` and mesh sizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BergmanSpec {
    pub sigma_max: f64,
    pub t_max: f64,
    pub sigma_nodes: usize,
    pub t_nodes: usize,
}

impl Default for BergmanSpec {
    fn default() -> Self {
        Self { sigma_max: 5.0, t_max: 50.0, sigma_nodes: 256, t_nodes: 512 }
    }
}

fn integrate(f: &[(f64, Complex64)], alpha: f64, spec: &BergmanSpec, sigma_nodes: usize, t_nodes: usize) -> f64 {
    let span = spec.sigma_max - 0.5;
    let grade = (1.0 / (alpha - 1.0)).max(1.0);
    let (vs, vw) = composite_gauss(0.0, 1.0, (sigma_nodes / PANEL_ORDER).max(1), PANEL_ORDER);
    let (ts, tw) = composite_gauss(-spec.t_max, spec.t_max, (t_nodes / PANEL_ORDER).max(1), PANEL_ORDER);
    let norm = (alpha - 1.0) * 4f64.powf(alpha - 1.0) / std::f64::consts::PI;
    // u^{α-2} du with u = span v^g becomes span^{α-1} g v^{g(α-1)-1} dv.
    let jac_exp = grade * (alpha - 1.0) - 1.0;
    let jac = span.powf(alpha - 1.0) * grade;

    let rotations: Vec<Vec<Complex64>> = ts
        .iter()
        .map(|&t| f.iter().map(|&(l, _)| Complex64::from_polar(1.0, -l * t)).collect())
        .collect();
    let mut total = 0.0;
    for (&v, &wv) in vs.iter().zip(&vw) {
        let u = span * v.powf(grade);
        let radial: Vec<Complex64> = f.iter().map(|&(l, c)| c * (-(0.5 + u) * l).exp()).collect();
        let sw = wv * jac * v.powf(jac_exp);
        let mut row = 0.0;
        for ((&t, &wt), rot) in ts.iter().zip(&tw).zip(&rotations) {
            let val: Complex64 = radial.iter().zip(rot).map(|(a, b)| a * b).sum();
            let d2 = (u + 1.0) * (u + 1.0) + t * t;
            row += wt * val.norm_sqr() / d2.powf(alpha);
        }
        total += sw * row;
    }
    norm * total
}

/// Weighted area norm of `f` on the truncated half-plane `1/2 < σ ≤ Σ`,
/// `|t| ≤ T_b`, against
/// `(α-1)(σ-1/2)^{α-2} 4^{α-1} / (π |s+1/2|^{2α}) dm(s)`, a probability
/// measure on the full half-plane.
pub fn norm_bergman(f: &DirichletPolynomial, alpha: f64, spec: &BergmanSpec) -> Result<NormEstimate> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(domain(format!("alpha = {alpha} must exceed 1")));
    }
    if !(spec.sigma_max > 0.5 && spec.t_max > 0.0) || spec.sigma_nodes < 2 * PANEL_ORDER || spec.t_nodes < 2 * PANEL_ORDER {
        return Err(config("Bergman domain or mesh too small"));
    }
    let terms: Vec<(f64, Complex64)> = f.iter().map(|(n, c)| ((n as f64).ln(), c)).collect();
    if terms.is_empty() {
        return Ok(NormEstimate::from_raw(0.0, f64::MIN_POSITIVE, 2.0, NormMethod::BergmanQuadrature, 0, 0));
    }
    let fine = integrate(&terms, alpha, spec, spec.sigma_nodes, spec.t_nodes);
    let coarse = integrate(&terms, alpha, spec, spec.sigma_nodes / 2, spec.t_nodes / 2);
    let samples = (spec.sigma_nodes * spec.t_nodes) as u64;
    let raw_error = (fine - coarse).abs() + rounding_floor(fine, samples);
    Ok(NormEstimate::from_raw(fine, raw_error, 2.0, NormMethod::BergmanQuadrature, samples, 0))
}
