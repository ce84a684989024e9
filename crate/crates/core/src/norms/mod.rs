//! Quasi-norm engines.
//!
//! Every engine returns a [`NormEstimate`]. Exact methods report `error = 0`;
//! quadrature methods report the half-width of an interval for the norm
//! together with the raw mean of `|F|^p` and its own half-width.

mod bergman;
mod disc;
mod lattice;
mod tensor;
mod vertical;

pub use bergman::{norm_bergman, BergmanSpec};
pub use disc::{basic_estimate_ratio, disc_mean_power, norm_disc, norm_hl_disc};
pub use lattice::lattice_generating_vector;
pub use vertical::{norm_vertical, vertical_step_limit};

use serde::{Deserialize, Serialize};

use crate::error::{config, domain, Result};
use crate::arithmetic::FactorizationTable;
use crate::series::{DirichletPolynomial, MultivariatePolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMethod {
    ExactL2,
    ExactEven,
    Qmc,
    VerticalLine,
    HlSurrogate,
    BergmanQuadrature,
}

impl NormMethod {
    pub fn is_exact(self) -> bool {
        matches!(self, NormMethod::ExactL2 | NormMethod::ExactEven)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NormMethod::ExactL2 => "exact_l2",
            NormMethod::ExactEven => "exact_even",
            NormMethod::Qmc => "qmc",
            NormMethod::VerticalLine => "vertical_line",
            NormMethod::HlSurrogate => "hl_surrogate",
            NormMethod::BergmanQuadrature => "bergman_quadrature",
        }
    }
}

impl std::str::FromStr for NormMethod {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "exact_l2" => NormMethod::ExactL2,
            "exact_even" => NormMethod::ExactEven,
            "qmc" => NormMethod::Qmc,
            "vertical_line" => NormMethod::VerticalLine,
            "hl_surrogate" => NormMethod::HlSurrogate,
            "bergman_quadrature" => NormMethod::BergmanQuadrature,
            _ => return Err(config(format!("unknown norm method `{s}`"))),
        })
    }
}

/// A quasi-norm value with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub p: f64,
    pub method: NormMethod,
    /// Half-width of the interval for `value`; 0 exactly for exact methods.
    pub error: f64,
    pub samples: u64,
    pub seed: u64,
    /// Mean of `|F|^p` (the `p`-th power of `value`).
    pub raw_mean: f64,
    /// Half-width of the interval for `raw_mean`.
    pub raw_error: f64,
}

impl NormEstimate {
    pub(crate) fn exact(value: f64, p: f64, method: NormMethod) -> Self {
        Self { value, p, method, error: 0.0, samples: 0, seed: 0, raw_mean: value.powf(p), raw_error: 0.0 }
    }

    /// Builds an estimate from a raw mean of `|F|^p` and its half-width.
    pub(crate) fn from_raw(raw_mean: f64, raw_error: f64, p: f64, method: NormMethod, samples: u64, seed: u64) -> Self {
        let raw_mean = raw_mean.max(0.0);
        let value = raw_mean.powf(1.0 / p);
        let error = if raw_mean > 0.0 {
            raw_error * value / (p * raw_mean)
        } else {
            raw_error.powf(1.0 / p)
        };
        Self { value, p, method, error, samples, seed, raw_mean, raw_error }
    }

    pub fn lower(&self) -> f64 {
        (self.value - self.error).max(0.0)
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error
    }

    /// Whether `x` lies inside `value ± error` (plus `slack`).
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        (x - self.value).abs() <= self.error + slack
    }
}

/// Rounding allowance for a mean of `samples` nonnegative terms of size
/// about `mean`; added to every statistical half-width so that exact
/// quadratures do not report a zero-width interval.
pub(crate) fn rounding_floor(mean: f64, samples: u64) -> f64 {
    (16.0 * f64::EPSILON * (samples.max(1) as f64).sqrt() * mean.abs()).max(f64::MIN_POSITIVE)
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("exponent p = {p} must be positive and finite")))
    }
}

/// `(Σ |a_n|^2)^{1/2}`.
pub fn norm_l2(f: &DirichletPolynomial) -> NormEstimate {
    NormEstimate::exact(f.coefficient_l2(), 2.0, NormMethod::ExactL2)
}

/// Returns `k` with `p = 2k` if `p` is an even integer.
pub fn even_half(p: f64) -> Option<u32> {
    let k = p / 2.0;
    (k >= 1.0 && k.fract() == 0.0 && k <= 64.0).then_some(k as u32)
}

/// `‖f‖_{2k} = ‖f^k‖_2^{1/k}`.
pub fn norm_even(f: &DirichletPolynomial, p: f64) -> Result<NormEstimate> {
    let k = even_half(p).ok_or_else(|| domain(format!("p = {p} is not an even integer")))?;
    let value = f.power(k)?.coefficient_l2().powf(1.0 / k as f64);
    Ok(NormEstimate::exact(value, p, NormMethod::ExactEven))
}

/// Same as [`norm_even`] on the polytorus side.
pub fn norm_even_lifted(f: &MultivariatePolynomial, p: f64) -> Result<NormEstimate> {
    let k = even_half(p).ok_or_else(|| domain(format!("p = {p} is not an even integer")))?;
    let mut acc = MultivariatePolynomial::constant(num_complex::Complex64::new(1.0, 0.0));
    for _ in 0..k {
        acc = acc.multiply(f);
    }
    let l2: f64 = acc.iter().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt();
    Ok(NormEstimate::exact(l2.powf(1.0 / k as f64), p, NormMethod::ExactEven))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureScheme {
    TensorGrid,
    RandomizedLattice,
}

/// Settings for [`norm_qmc`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub scheme: QuadratureScheme,
    /// Tensor grid: points per variable (defaults chosen from the degrees).
    pub points_per_dim: Option<usize>,
    /// Lattice: points per replication (rounded up to a prime).
    pub total_points: usize,
    pub replications: usize,
    pub seed: u64,
}

impl QuadratureSpec {
    pub const MAX_GRID_POINTS: usize = 1 << 24;

    pub fn tensor_grid() -> Self {
        Self { scheme: QuadratureScheme::TensorGrid, points_per_dim: None, total_points: 0, replications: 1, seed: 0 }
    }

    pub fn tensor_grid_with(points_per_dim: usize) -> Self {
        Self { points_per_dim: Some(points_per_dim), ..Self::tensor_grid() }
    }

    pub fn lattice(total_points: usize, replications: usize, seed: u64) -> Self {
        Self {
            scheme: QuadratureScheme::RandomizedLattice,
            points_per_dim: None,
            total_points,
            replications,
            seed,
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::tensor_grid()
    }
}

/// `(∫_{T^m} |F|^p dμ_m)^{1/p}` by quadrature.
pub fn norm_qmc(f: &MultivariatePolynomial, p: f64, spec: &QuadratureSpec) -> Result<NormEstimate> {
    check_p(p)?;
    match spec.scheme {
        QuadratureScheme::TensorGrid => tensor::norm_tensor(f, p, spec.points_per_dim),
        QuadratureScheme::RandomizedLattice => lattice::norm_lattice(f, p, spec.total_points, spec.replications, spec.seed),
    }
}

/// Largest tensor grid used by [`norm_dirichlet`] before it switches to the lattice.
pub const AUTO_TENSOR_BUDGET: usize = 1 << 20;
/// Lattice size and replication count used by [`norm_dirichlet`].
pub const AUTO_LATTICE_POINTS: usize = 1 << 13;
pub const AUTO_LATTICE_REPLICATIONS: usize = 16;

/// `‖f‖_{H^p}` by the cheapest adequate engine: exact for even `p`, the
/// default tensor grid when it fits [`AUTO_TENSOR_BUDGET`], otherwise the
/// randomized lattice seeded by `seed`.
pub fn norm_dirichlet(f: &DirichletPolynomial, p: f64, table: &FactorizationTable, seed: u64) -> Result<NormEstimate> {
    check_p(p)?;
    if p == 2.0 {
        return Ok(norm_l2(f));
    }
    if even_half(p).is_some() {
        return norm_even(f, p);
    }
    let lifted = crate::series::bohr_lift(f, table)?;
    let total = lifted
        .max_degrees()
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(tensor::default_points(d, p)))
        .unwrap_or(usize::MAX);
    let spec = if total <= AUTO_TENSOR_BUDGET {
        QuadratureSpec::tensor_grid()
    } else {
        QuadratureSpec::lattice(AUTO_LATTICE_POINTS, AUTO_LATTICE_REPLICATIONS, seed)
    };
    norm_qmc(&lifted, p, &spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn exact_examples() {
        let f = DirichletPolynomial::from_dense_real(&[1.0, 2.0]);
        assert!((norm_l2(&f).value - 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(norm_l2(&DirichletPolynomial::zero()).value, 0.0);
        let g = DirichletPolynomial::from_dense_real(&[1.0, 1.0]);
        assert!((norm_even(&g, 4.0).unwrap().value - 6f64.powf(0.25)).abs() < 1e-15);
        assert_eq!(norm_even(&g, 2.0).unwrap().value, norm_l2(&g).value);
        let c = DirichletPolynomial::constant(Complex64::new(0.0, -3.0));
        assert!((norm_even(&c, 6.0).unwrap().value - 3.0).abs() < 1e-15);
        assert!(norm_even(&g, 3.0).is_err());
        assert_eq!(norm_l2(&f).error, 0.0);
    }

    #[test]
    fn method_names_round_trip() {
        for m in [NormMethod::ExactL2, NormMethod::Qmc, NormMethod::BergmanQuadrature] {
            assert_eq!(m.as_str().parse::<NormMethod>().unwrap(), m);
        }
    }
}
