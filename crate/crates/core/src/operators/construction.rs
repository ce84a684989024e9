use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::partial_sum;
use crate::arithmetic::FactorizationTable;
use crate::error::{domain, Result};
use crate::extremals::c1_closed_form;
use crate::norms::{norm_dirichlet, NormEstimate};
use crate::rng::{label, task_seed};
use crate::series::{euler_product_power, DirichletPolynomial, LocalFactor};

const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// `f_M = Π_{j ≤ k} (√(1-p/2) + √(p/2) p_j^{-s})^{2/p}` with `M = p_1⋯p_k`.
///
/// Each factor is the one-variable extremal for `C(1,p)`, so `‖f_M‖_p = 1`
/// and `a_M = C(1,p)^k`. When `2/p` is not an integer each local series is
/// cut at `degree`.
pub fn extremal_fm(k: usize, p: f64, degree: Option<usize>, table: &FactorizationTable) -> Result<DirichletPolynomial> {
    if !(p > 0.0 && p <= 2.0) {
        return Err(domain(format!("p = {p} must lie in (0, 2]")));
    }
    let primes = table.primes();
    if k > primes.len() {
        return Err(domain(format!("table holds fewer than {k} primes")));
    }
    let series = vec![Complex64::new((1.0 - p / 2.0).sqrt(), 0.0), Complex64::new((p / 2.0).sqrt(), 0.0)];
    let factors: Vec<LocalFactor> = primes[..k].iter().map(|&q| LocalFactor { prime: q, series: series.clone() }).collect();
    euler_product_power(&factors, 2.0 / p, degree)
}

/// Both truncations `S_{M-1} f_M` and `S_M f_M` and the triangle-inequality
/// bound `max ≥ 2^{-1/p} C(1,p)^k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BigNCheck {
    pub k: usize,
    pub p: f64,
    pub m: u64,
    pub norm_fm: NormEstimate,
    pub norm_below: NormEstimate,
    pub norm_at: NormEstimate,
    pub bound: f64,
    /// Larger of the two truncation norms.
    pub max: f64,
    pub max_error: f64,
    pub holds: bool,
}

pub fn lower_bound_big_n(
    k: usize,
    p: f64,
    degree: Option<usize>,
    table: &FactorizationTable,
    seed: u64,
) -> Result<BigNCheck> {
    if k == 0 {
        return Err(domain("k must be positive"));
    }
    let f = extremal_fm(k, p, degree, table)?;
    let m: u64 = table.primes()[..k].iter().product();
    let s = |tag: &str| task_seed(seed, &[label(tag), k as u64]);
    let norm_fm = norm_dirichlet(&f, p, table, s("fm"))?;
    let norm_below = norm_dirichlet(&partial_sum(&f, m - 1), p, table, s("below"))?;
    let norm_at = norm_dirichlet(&partial_sum(&f, m), p, table, s("at"))?;
    let bound = 2f64.powf(-1.0 / p) * c1_closed_form(p)?.powi(k as i32);
    let top = if norm_at.value >= norm_below.value { norm_at } else { norm_below };
    Ok(BigNCheck {
        k,
        p,
        m,
        norm_fm,
        norm_below,
        norm_at,
        bound,
        max: top.value,
        max_error: top.error,
        holds: top.value + top.error >= bound,
    })
}

/// Which truncation of `f_{n_J}` the shift `x^{-s}` exposes to `S_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GnCase {
    /// `x = ⌊N/n_J⌋`, `S_N g_N = x^{-s} S_{n_J} f_{n_J}`.
    KeepTop,
    /// `x = ⌊N/n_J⌋ + 1`, `S_N g_N = x^{-s} S_{n_J-1} f_{n_J}`.
    DropTop,
}

impl GnCase {
    pub fn as_str(self) -> &'static str {
        match self {
            GnCase::KeepTop => "keep_top",
            GnCase::DropTop => "drop_top",
        }
    }
}

/// Integer facts behind `S_N g_N = x^{-s} S_L f_{n_J}` with `L = n_J` or
/// `n_J - 1`: every index `x·m` with `m ≤ L` is at most `N` and every index
/// with `m ≥ L + 1` exceeds `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GnCertificate {
    pub n: u64,
    pub j: usize,
    pub n_j: u64,
    pub case: GnCase,
    pub x: u64,
    /// Largest kept index of `f_{n_J}`.
    pub kept: u64,
    /// `x · kept ≤ N`.
    pub lower_ok: bool,
    /// `x · (kept + 1) > N`.
    pub upper_ok: bool,
}

impl GnCertificate {
    pub fn holds(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// `(J, n_J)` with `J = max { j : N/n_j ≥ n_j + 1 }` over primorials `n_j`.
pub fn primorial_index(n: u64) -> Result<(usize, u64)> {
    let mut best = None;
    let mut acc = 1u64;
    for (i, &q) in SMALL_PRIMES.iter().enumerate() {
        acc = match acc.checked_mul(q) {
            Some(v) => v,
            None => break,
        };
        if (n as u128) >= (acc as u128) * (acc as u128 + 1) {
            best = Some((i + 1, acc));
        } else {
            break;
        }
    }
    best.ok_or_else(|| domain(format!("N = {n} is below 6; no primorial satisfies N/n_j ≥ n_j + 1")))
}

/// Pure integer certificate for the given case.
pub fn gn_certificate(n: u64, case: GnCase) -> Result<GnCertificate> {
    let (j, n_j) = primorial_index(n)?;
    let floor = n / n_j;
    let (x, kept) = match case {
        GnCase::KeepTop => (floor, n_j),
        GnCase::DropTop => (floor + 1, n_j - 1),
    };
    let x128 = x as u128;
    let n128 = n as u128;
    Ok(GnCertificate {
        n,
        j,
        n_j,
        case,
        x,
        kept,
        lower_ok: x128 * kept as u128 <= n128,
        upper_ok: x128 * (kept as u128 + 1) > n128,
    })
}

/// `g_N = x^{-s} f_{n_J}` with the case that exposes the larger truncation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftedGn {
    pub certificate: GnCertificate,
    pub polynomial: DirichletPolynomial,
    /// `‖f_{n_J}‖_p`, equal to `‖g_N‖_p`.
    pub norm: NormEstimate,
    /// `‖S_N g_N‖_p`, computed as the norm of the exposed truncation.
    pub truncated_norm: NormEstimate,
    /// `S_N g_N` coincides term by term with the shifted truncation.
    pub identity_verified: bool,
}

pub fn shifted_gn(
    n: u64,
    p: f64,
    degree: Option<usize>,
    table: &FactorizationTable,
    seed: u64,
) -> Result<ShiftedGn> {
    let (j, n_j) = primorial_index(n)?;
    let f = extremal_fm(j, p, degree, table)?;
    let s = |tag: &str| task_seed(seed, &[label(tag), n]);
    let norm = norm_dirichlet(&f, p, table, s("gn"))?;
    let at = norm_dirichlet(&partial_sum(&f, n_j), p, table, s("at"))?;
    let below = norm_dirichlet(&partial_sum(&f, n_j - 1), p, table, s("below"))?;
    let (case, truncated_norm) = if at.value >= below.value { (GnCase::KeepTop, at) } else { (GnCase::DropTop, below) };
    let certificate = gn_certificate(n, case)?;
    let polynomial = f.shift(certificate.x)?;
    let expected = partial_sum(&f, certificate.kept).shift(certificate.x)?;
    let identity_verified = certificate.holds() && partial_sum(&polynomial, n) == expected;
    Ok(ShiftedGn { certificate, polynomial, norm, truncated_norm, identity_verified })
}
