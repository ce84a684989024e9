//! Coefficient inequalities with the weights `Φ_α`:
//!
//! * `(Σ |a_n|^2 / Φ_{2/p}(n))^{1/2} ≤ ‖f‖_p` for `p ≤ 2`,
//! * `‖f‖_p ≤ (Σ |a_n|^2 Φ_{p/2}(n))^{1/2}` for `p ≥ 2`.

use serde::{Deserialize, Serialize};

use crate::arithmetic::FactorizationTable;
use crate::error::{domain, Result};
use crate::norms::{norm_l2, NormEstimate, NormMethod};
use crate::numeric::CompensatedSum;
use crate::series::DirichletPolynomial;

/// Relative slack for comparisons between two exactly computed sides.
pub const EXACT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Weighted coefficient sum bounds the norm from below (`p ≤ 2`).
    Lower,
    /// Weighted coefficient sum bounds the norm from above (`p ≥ 2`).
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HlCheck {
    pub p: f64,
    pub direction: Direction,
    pub coefficient_side: f64,
    pub norm: NormEstimate,
    /// Signed distance to failure, accounting for the estimator error.
    pub margin: f64,
    pub holds: bool,
}

/// `(Σ |a_n|^2 / Φ_{2/p}(n))^{1/2}`, `0 < p ≤ 2`.
pub fn lower_coefficient_side(f: &DirichletPolynomial, p: f64, table: &FactorizationTable) -> Result<f64> {
    if !(p > 0.0 && p <= 2.0) {
        return Err(domain(format!("lower inequality needs 0 < p <= 2, got {p}")));
    }
    let mut acc = CompensatedSum::new();
    for (n, c) in f.iter() {
        acc.add(c.norm_sqr() / table.phi_alpha(n, 2.0 / p)?);
    }
    Ok(acc.value().sqrt())
}

/// `(Σ |a_n|^2 Φ_{p/2}(n))^{1/2}`, `p ≥ 2`.
pub fn upper_coefficient_side(f: &DirichletPolynomial, p: f64, table: &FactorizationTable) -> Result<f64> {
    if !(p >= 2.0 && p.is_finite()) {
        return Err(domain(format!("upper inequality needs p >= 2, got {p}")));
    }
    let mut acc = CompensatedSum::new();
    for (n, c) in f.iter() {
        acc.add(c.norm_sqr() * table.phi_alpha(n, p / 2.0)?);
    }
    Ok(acc.value().sqrt())
}

fn slack(norm: &NormEstimate, scale: f64) -> f64 {
    if norm.method.is_exact() {
        EXACT_SLACK * scale
    } else {
        norm.error + EXACT_SLACK * scale
    }
}

/// Checks the lower inequality against a norm estimate of `f`.
pub fn check_lower(f: &DirichletPolynomial, norm: &NormEstimate, table: &FactorizationTable) -> Result<HlCheck> {
    let side = lower_coefficient_side(f, norm.p, table)?;
    let margin = norm.value + slack(norm, side.max(norm.value)) - side;
    Ok(HlCheck { p: norm.p, direction: Direction::Lower, coefficient_side: side, norm: *norm, margin, holds: margin >= 0.0 })
}

/// Checks the upper inequality against a norm estimate of `f`.
pub fn check_upper(f: &DirichletPolynomial, norm: &NormEstimate, table: &FactorizationTable) -> Result<HlCheck> {
    let side = upper_coefficient_side(f, norm.p, table)?;
    let margin = side + slack(norm, side.max(norm.value)) - norm.value;
    Ok(HlCheck { p: norm.p, direction: Direction::Upper, coefficient_side: side, norm: *norm, margin, holds: margin >= 0.0 })
}

/// The lower inequality at `p = 2/k` for `f = g^k`, where the norm is known
/// exactly: `‖g^k‖_{2/k} = ‖g‖_2^k`.
pub fn check_power_family(g: &DirichletPolynomial, k: u32, table: &FactorizationTable) -> Result<HlCheck> {
    if k == 0 {
        return Err(domain("power must be positive"));
    }
    let f = g.power(k)?;
    let p = 2.0 / k as f64;
    let mut norm = norm_l2(g);
    norm.value = norm.value.powi(k as i32);
    norm.p = p;
    norm.raw_mean = norm.value.powf(p);
    norm.method = if k == 1 { NormMethod::ExactL2 } else { NormMethod::ExactEven };
    check_lower(&f, &norm, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::norm_even;
    use num_complex::Complex64;

    #[test]
    fn small_cases() {
        let t = FactorizationTable::new(10_000).unwrap();
        let g = DirichletPolynomial::from_dense_real(&[1.0, 1.0, 0.5]);
        for k in 1..=3 {
            assert!(check_power_family(&g, k, &t).unwrap().holds);
        }
        // p = 2 is an identity on both sides.
        let c = check_upper(&g, &norm_even(&g, 2.0).unwrap(), &t).unwrap();
        assert!((c.coefficient_side - c.norm.value).abs() < 1e-15 && c.holds);
        let f = DirichletPolynomial::from_pairs([(6, Complex64::new(2.0, 0.0))]).unwrap();
        assert!((upper_coefficient_side(&f, 4.0, &t).unwrap() - 4.0).abs() < 1e-15);
        assert!(lower_coefficient_side(&f, 3.0, &t).is_err());
    }
}
