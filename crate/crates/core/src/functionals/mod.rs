//! The functionals `φ_β(s) = 1 + Σ_{n≥2} n^{-1/2} (log n)^{-β} n^{-s}` on
//! Dirichlet series and `ψ_β(z) = Σ_j Γ(j+1)/Γ(j+1+β) z^j` on the disc.
//!
//! `⟨f, φ_β⟩` has the integral form
//! `a_1 + Γ(β)^{-1} ∫_{1/2}^∞ (f(σ) - a_1)(σ - 1/2)^{β-1} dσ`, and
//! `⟨f, ψ_β⟩ = Γ(β)^{-1} ∫_0^1 f(r)(1-r)^{β-1} dr`. Membership of `φ_β` and
//! `ψ_β` in the dual spaces is probed through coefficient-side majorants.

mod dual;
mod integral;
mod membership;
mod psi;

pub use dual::{dual_ratio_scan, dual_test_function, euler_pairing, DualRatioRow, DualRatioScan};
pub use integral::{halfplane_functional_check, mellin_integral, HalfplaneCheck};
pub use membership::{phi_membership_scan, MembershipRow, TREND_FACTOR};
pub use psi::{l_beta_integral, psi_beta_criteria, PsiBetaTruncation, PsiClassification};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::series::DirichletPolynomial;

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("beta = {beta} must be positive")))
    }
}

/// `1/√n (log* n)^{-β}`, with `log* 1 = 1`.
pub fn phi_beta_coefficient(n: u64, beta: f64) -> f64 {
    if n <= 1 {
        1.0
    } else {
        let x = n as f64;
        (-(0.5 * x.ln() + beta * x.ln().ln())).exp()
    }
}

/// Coefficients of `φ_β` up to `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiBetaTruncation {
    pub beta: f64,
    pub n: u64,
    /// `coefficients[i]` belongs to index `i + 1`.
    pub coefficients: Vec<f64>,
}

impl PhiBetaTruncation {
    pub fn new(beta: f64, n: u64) -> Result<Self> {
        check_beta(beta)?;
        if n == 0 {
            return Err(domain("cutoff must be positive"));
        }
        Ok(Self { beta, n, coefficients: (1..=n).map(|k| phi_beta_coefficient(k, beta)).collect() })
    }

    pub fn to_dirichlet(&self) -> DirichletPolynomial {
        DirichletPolynomial::from_dense_real(&self.coefficients)
    }
}

/// `⟨f, φ_β⟩ = a_1 + Σ_{n≥2} a_n / (√n (log n)^β)`.
pub fn pair_h2(f: &DirichletPolynomial, beta: f64) -> Result<Complex64> {
    check_beta(beta)?;
    Ok(f.iter().map(|(n, a)| a * phi_beta_coefficient(n, beta)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        let one = DirichletPolynomial::constant(Complex64::new(1.0, 0.0));
        assert_eq!(pair_h2(&one, 0.7).unwrap(), Complex64::new(1.0, 0.0));
        let f = DirichletPolynomial::monomial(2, Complex64::new(4.0, 0.0)).unwrap();
        let expected = 4.0 / (2f64.sqrt() * 2f64.ln());
        assert!((pair_h2(&f, 1.0).unwrap().re - expected).abs() < 1e-14);
        assert!(pair_h2(&f, 0.0).is_err());
    }

    #[test]
    fn phi_truncation_is_decreasing_from_three() {
        for beta in [0.05, 0.5, 3.0] {
            let t = PhiBetaTruncation::new(beta, 2000).unwrap();
            assert!(t.coefficients.iter().all(|&c| c > 0.0));
            assert!(t.coefficients[2..].windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn truncated_zeta_pairing_stays_bounded() {
        // Σ 1/(√n log n) diverges, but a_n = n^{-1/2} gives Σ 1/(n (log n)^2),
        // bounded by 1 + 1/(2 log^2 2) + 1/log 2 via the integral test.
        let coeffs: Vec<f64> = (1..=100_000u64).map(|n| 1.0 / (n as f64).sqrt()).collect();
        let f = DirichletPolynomial::from_dense_real(&coeffs);
        let s = pair_h2(&f, 2.0).unwrap().re;
        let bound = 1.0 + 0.5 / 2f64.ln().powi(2) + 1.0 / 2f64.ln();
        assert!(s > 1.0 && s < bound);
    }
}
