use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::check_beta;
use super::membership::TREND_FACTOR;
use crate::error::{domain, Result};
use crate::norms::norm_hl_disc;
use crate::numeric::ln_gamma_ratio;
use crate::series::UnivariatePolynomial;

/// `Γ(j+1)/Γ(j+1+β)` for `0 ≤ j ≤ J`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiBetaTruncation {
    pub beta: f64,
    pub j: usize,
    pub coefficients: Vec<f64>,
}

impl PsiBetaTruncation {
    /// `β = 0` is allowed and gives `ψ_0(z) = 1/(1-z)`.
    pub fn new(beta: f64, j: usize) -> Result<Self> {
        check_nonnegative(beta)?;
        let coefficients = (0..=j).map(|i| ln_gamma_ratio(i as f64 + 1.0, i as f64 + 1.0 + beta).exp()).collect();
        Ok(Self { beta, j, coefficients })
    }

    /// Constants `(L, U)` with `L (j+1)^{-β} ≤ c_j ≤ U (j+1)^{-β}` for all
    /// `j ≥ 0`, from Wendel's inequality applied to `β = m + s`.
    pub fn comparison_constants(beta: f64) -> (f64, f64) {
        let m = beta.floor();
        let s = beta - m;
        let lower = (0..m as usize).map(|i| 1.0 / (1.0 + s + i as f64)).product();
        (lower, (1.0 + s).powf(1.0 - s))
    }

    pub fn to_univariate(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::from_real(&self.coefficients)
    }
}

fn check_nonnegative(beta: f64) -> Result<()> {
    if beta >= 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("beta = {beta} must be nonnegative")))
    }
}

/// `L_β(f) = Γ(β)^{-1} ∫_0^1 f(r)(1-r)^{β-1} dr`, exactly: `z^j` contributes
/// `Γ(j+1)/Γ(j+1+β)`.
pub fn l_beta_integral(f: &UnivariatePolynomial, beta: f64) -> Result<Complex64> {
    check_beta(beta)?;
    Ok(f.coefficients()
        .iter()
        .enumerate()
        .map(|(j, &c)| c * ln_gamma_ratio(j as f64 + 1.0, j as f64 + 1.0 + beta).exp())
        .sum())
}

/// Convergence trend of the surrogate `‖ψ_β‖_{H^q}` with `q = p/(p-1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiClassification {
    pub p: f64,
    pub beta: f64,
    pub q: f64,
    /// Cutoffs `J`.
    pub cutoffs: Vec<usize>,
    /// Surrogate `Σ_{j ≤ J} (j+1)^{q-2} c_j^q` at each cutoff.
    pub sums: Vec<f64>,
    /// Ratio of the last two block increments.
    pub increment_ratio: f64,
    /// `q(1-β) - 2`: the terms behave like `(j+1)` to this power.
    pub exponent: f64,
    pub convergent: bool,
}

/// Classifies `ψ_β` at dyadic cutoffs `2^6, …, 2^{log2_max}` for `p > 1`.
pub fn psi_beta_criteria(p: f64, beta: f64, log2_max: u32) -> Result<PsiClassification> {
    check_nonnegative(beta)?;
    if !(p > 1.0 && p.is_finite()) {
        return Err(domain(format!(
            "the surrogate needs p > 1 (got {p}); use the boundary integral for p ≤ 1"
        )));
    }
    if !(8..=26).contains(&log2_max) {
        return Err(domain("log2_max must lie in 8..=26"));
    }
    let q = p / (p - 1.0);
    let top = 1usize << log2_max;
    let psi = PsiBetaTruncation::new(beta, top)?;
    let cutoffs: Vec<usize> = (6..=log2_max).map(|e| 1usize << e).collect();
    let sums = cutoffs
        .iter()
        .map(|&j| norm_hl_disc(&psi.coefficients[..=j], q).map(|v| v.powf(q)))
        .collect::<Result<Vec<f64>>>()?;
    let k = sums.len();
    let increment_ratio = (sums[k - 1] - sums[k - 2]) / (sums[k - 2] - sums[k - 3]);
    Ok(PsiClassification {
        p,
        beta,
        q,
        cutoffs,
        sums,
        increment_ratio,
        exponent: q * (1.0 - beta) - 2.0,
        convergent: increment_ratio <= TREND_FACTOR,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::gamma;

    #[test]
    fn truncation_bounds() {
        for beta in [0.0, 0.3, 1.0, 1.7, 3.25] {
            let t = PsiBetaTruncation::new(beta, 20_000).unwrap();
            let (l, u) = PsiBetaTruncation::comparison_constants(beta);
            for (j, &c) in t.coefficients.iter().enumerate() {
                let scaled = c * (j as f64 + 1.0).powf(beta);
                assert!(scaled >= l * (1.0 - 1e-12) && scaled <= u * (1.0 + 1e-12), "beta {beta} j {j}");
            }
            assert!(t.coefficients.windows(2).all(|w| w[1] < w[0] || beta == 0.0));
        }
    }

    #[test]
    fn l_beta_examples() {
        let one = UnivariatePolynomial::from_real(&[1.0]);
        for beta in [0.5, 1.0, 2.5] {
            assert!((l_beta_integral(&one, beta).unwrap().re - 1.0 / gamma(beta + 1.0)).abs() < 1e-13);
        }
        for j in 0..6 {
            let v = l_beta_integral(&UnivariatePolynomial::monomial(j), 1.0).unwrap().re;
            assert!((v - 1.0 / (j as f64 + 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn threshold_examples() {
        assert!(psi_beta_criteria(2.0, 0.75, 16).unwrap().convergent);
        assert!(!psi_beta_criteria(2.0, 0.25, 16).unwrap().convergent);
        let c = psi_beta_criteria(2.0, 1.0, 16).unwrap();
        assert!(c.convergent && (c.exponent + 2.0).abs() < 1e-15);
        assert!(psi_beta_criteria(1.0, 1.0, 16).is_err());
        assert!(!psi_beta_criteria(4.0, 0.0, 16).unwrap().convergent);
    }
}
