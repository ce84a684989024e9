use super::{check_p, tensor, NormEstimate};
use crate::error::{domain, Result};
use crate::series::UnivariatePolynomial;

/// `‖f‖_{H^p(D)}` for a one-variable polynomial, by the tensor grid.
pub fn norm_disc(f: &UnivariatePolynomial, p: f64, points: Option<usize>) -> Result<NormEstimate> {
    check_p(p)?;
    tensor::norm_tensor(&f.to_multivariate(), p, points)
}

/// Mean of `|f|^p` over `points` equispaced nodes of the circle.
pub fn disc_mean_power(f: &UnivariatePolynomial, p: f64, points: usize) -> f64 {
    if f.is_zero() {
        return 0.0;
    }
    let n = points.max(f.degree() + 1);
    let values = tensor::grid_values(&f.to_multivariate(), &[n]);
    values.iter().map(|v| v.norm().powf(p)).sum::<f64>() / n as f64
}

/// `(Σ_j (j+1)^{q-2} a_j^q)^{1/q}`, equivalent to the `H^q` norm for
/// positive non-increasing coefficients.
pub fn norm_hl_disc(a: &[f64], q: f64) -> Result<f64> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(domain(format!("q = {q} must exceed 1")));
    }
    if a.is_empty() {
        return Err(domain("empty coefficient sequence"));
    }
    if a.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(domain("coefficients must be positive"));
    }
    if a.windows(2).any(|w| w[1] > w[0]) {
        return Err(domain("coefficients must be non-increasing"));
    }
    let s: f64 = a.iter().enumerate().map(|(j, &x)| (j as f64 + 1.0).powf(q - 2.0) * x.powf(q)).sum();
    Ok(s.powf(1.0 / q))
}

/// Ratio of `‖f - f(0)‖_p^p` to
/// `‖f‖_p^p - |f(0)|^p + |f(0)|^{p - p^2/2} (‖f‖_p^p - |f(0)|^p)^{p/2}`,
/// or `None` when the denominator vanishes.
pub fn basic_estimate_ratio(f: &UnivariatePolynomial, p: f64, points: usize) -> Result<Option<f64>> {
    check_p(p)?;
    let f0 = f.coefficient(0).norm();
    let mut tail = f.clone();
    tail = UnivariatePolynomial::new(
        tail.coefficients().iter().enumerate().map(|(k, &c)| if k == 0 { Default::default() } else { c }).collect(),
    );
    let lhs = disc_mean_power(&tail, p, points);
    let excess = (disc_mean_power(f, p, points) - f0.powf(p)).max(0.0);
    let rhs = excess + f0.powf(p - p * p / 2.0) * excess.powf(p / 2.0);
    Ok((rhs > 1e-300).then(|| lhs / rhs))
}
