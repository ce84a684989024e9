use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{lower_bound_big_n, partial_sum, shifted_gn};
use crate::arithmetic::FactorizationTable;
use crate::error::{config, domain, Result};
use crate::extremals::c1_closed_form;
use crate::norms::{norm_dirichlet, NormEstimate};
use crate::random::complex_gaussian;
use crate::rng::{label, task_rng, task_seed};
use crate::series::DirichletPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "extremal_fM")]
    ExtremalFm,
    #[serde(rename = "shifted_gN")]
    ShiftedGn,
    #[serde(rename = "random")]
    Random,
    #[serde(rename = "user")]
    User,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::ExtremalFm => "extremal_fM",
            Family::ShiftedGn => "shifted_gN",
            Family::Random => "random",
            Family::User => "user",
        }
    }
}

impl FromStr for Family {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "extremal_fM" | "extremal_fm" => Family::ExtremalFm,
            "shifted_gN" | "shifted_gn" => Family::ShiftedGn,
            "random" => Family::Random,
            "user" => Family::User,
            _ => return Err(config(format!("unknown family `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanOptions {
    /// Random draws per cutoff (random family only).
    pub trials: usize,
    pub seed: u64,
    /// Local truncation degree for extremal constructions when `2/p` is not
    /// an integer.
    pub degree: Option<usize>,
    /// Candidates for the user family.
    pub users: Vec<DirichletPolynomial>,
}

/// Best witness `‖S_N f‖_p / ‖f‖_p` found for one cutoff.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialSumExperiment {
    pub family: Family,
    pub p: f64,
    pub n: u64,
    /// Number of primes in the extremal construction, if any.
    pub k: Option<usize>,
    pub trials: usize,
    /// Index of the witnessing candidate.
    pub witness: usize,
    pub ratio: f64,
    pub ratio_error: f64,
    pub norm_full: f64,
    pub norm_truncated: f64,
    /// `2^{-1/p} C(1,p)^k` for the extremal family.
    pub bign_bound: Option<f64>,
    /// Larger of `‖S_{M-1} f_M‖_p` and `‖S_M f_M‖_p`.
    pub bign_max: Option<f64>,
    pub bign_holds: Option<bool>,
    /// `log(ratio) · log log N / log N`.
    pub statistic: Option<f64>,
    /// `½ log C(1,p)` for `p < 1`.
    pub reference: Option<f64>,
    pub seed: u64,
}

struct Witness {
    ratio: f64,
    error: f64,
    full: f64,
    truncated: f64,
}

fn witness(full: &NormEstimate, truncated: &NormEstimate) -> Result<Witness> {
    if full.value <= 0.0 {
        return Err(domain("candidate has zero norm"));
    }
    let ratio = truncated.value / full.value;
    let rel = full.error / full.value + if truncated.value > 0.0 { truncated.error / truncated.value } else { 0.0 };
    let error = if truncated.value > 0.0 { ratio * rel } else { truncated.error / full.value };
    Ok(Witness { ratio, error, full: full.value, truncated: truncated.value })
}

fn ratio_for(f: &DirichletPolynomial, n: u64, p: f64, table: &FactorizationTable, seed: u64) -> Result<Witness> {
    if f.length() <= n {
        let full = norm_dirichlet(f, p, table, seed)?;
        return Ok(Witness { ratio: 1.0, error: 0.0, full: full.value, truncated: full.value });
    }
    let full = norm_dirichlet(f, p, table, task_seed(seed, &[0]))?;
    let truncated = norm_dirichlet(&partial_sum(f, n), p, table, task_seed(seed, &[1]))?;
    witness(&full, &truncated)
}

/// Dense complex Gaussian coefficients on `1..=L`, `L` uniform in `1..=2N`,
/// normalized in `ℓ^2`.
fn random_candidate(n: u64, seed: u64, trial: usize) -> Result<DirichletPolynomial> {
    let mut rng = task_rng(seed, &[label("random"), n, trial as u64]);
    let len = rng.random_range(1..=2 * n.max(1));
    let coeffs: Vec<Complex64> = (0..len).map(|_| complex_gaussian(&mut rng)).collect();
    let l2 = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    DirichletPolynomial::from_pairs(coeffs.into_iter().enumerate().map(|(i, c)| (i as u64 + 1, c / l2)))
}

fn statistic(ratio: f64, n: u64) -> Option<f64> {
    let ln = (n as f64).ln();
    (n >= 3 && ratio > 0.0).then(|| ratio.ln() * ln.ln() / ln)
}

/// Picks the largest ratio; ties go to the lowest index.
fn best(ws: Vec<Witness>) -> Option<(usize, Witness)> {
    let mut out: Option<(usize, Witness)> = None;
    for (i, w) in ws.into_iter().enumerate() {
        if out.as_ref().is_none_or(|(_, b)| w.ratio > b.ratio) {
            out = Some((i, w));
        }
    }
    out
}

/// For each cutoff in `ns`, the best observed lower bound for
/// `‖S_N‖_{H^p → H^p}` within `family`. For the extremal family every
/// cutoff must be a primorial.
pub fn operator_norm_scan(
    p: f64,
    ns: &[u64],
    family: Family,
    opts: &ScanOptions,
    table: &FactorizationTable,
) -> Result<Vec<PartialSumExperiment>> {
    let reference = if p < 1.0 { Some(0.5 * c1_closed_form(p)?.ln()) } else { None };
    let base = |n: u64, trials: usize, witness: usize, w: &Witness| PartialSumExperiment {
        family,
        p,
        n,
        k: None,
        trials,
        witness,
        ratio: w.ratio,
        ratio_error: w.error,
        norm_full: w.full,
        norm_truncated: w.truncated,
        bign_bound: None,
        bign_max: None,
        bign_holds: None,
        statistic: statistic(w.ratio, n),
        reference,
        seed: opts.seed,
    };
    match family {
        Family::ExtremalFm => {
            let primorials = table.primorials(SMALL_PRIMORIALS);
            ns.par_iter()
                .map(|&n| {
                    let k = primorials
                        .iter()
                        .position(|&m| m == n)
                        .ok_or_else(|| domain(format!("N = {n} is not a primorial")))?
                        + 1;
                    let check = lower_bound_big_n(k, p, opts.degree, table, opts.seed)?;
                    let w = witness(&check.norm_fm, &check.norm_at)?;
                    let mut row = base(n, 1, 0, &w);
                    row.k = Some(k);
                    row.bign_bound = Some(check.bound);
                    row.bign_max = Some(check.max);
                    row.bign_holds = Some(check.holds);
                    Ok(row)
                })
                .collect()
        }
        Family::ShiftedGn => ns
            .par_iter()
            .map(|&n| {
                let g = shifted_gn(n, p, opts.degree, table, opts.seed)?;
                let w = witness(&g.norm, &g.truncated_norm)?;
                let mut row = base(n, 1, 0, &w);
                row.k = Some(g.certificate.j);
                Ok(row)
            })
            .collect(),
        Family::Random | Family::User => {
            let count = if family == Family::Random { opts.trials } else { opts.users.len() };
            if count == 0 {
                return Err(config("no candidates to scan"));
            }
            let tasks: Vec<(usize, usize)> = (0..ns.len()).flat_map(|i| (0..count).map(move |t| (i, t))).collect();
            let results: Vec<Witness> = tasks
                .par_iter()
                .map(|&(i, t)| {
                    let n = ns[i];
                    let seed = task_seed(opts.seed, &[label(family.as_str()), n, t as u64]);
                    match family {
                        Family::Random => ratio_for(&random_candidate(n, opts.seed, t)?, n, p, table, seed),
                        _ => ratio_for(&opts.users[t], n, p, table, seed),
                    }
                })
                .collect::<Result<_>>()?;
            let mut iter = results.into_iter();
            let mut rows = Vec::with_capacity(ns.len());
            for &n in ns {
                let chunk: Vec<Witness> = iter.by_ref().take(count).collect();
                let (idx, w) = best(chunk).expect("nonempty chunk");
                rows.push(base(n, count, idx, &w));
            }
            Ok(rows)
        }
    }
}

const SMALL_PRIMORIALS: usize = 15;

/// Empirical `(1-p) · max ‖S_N f‖_p / ‖f‖_p` over random candidates, as `p`
/// approaches 1. Data only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HelsonRow {
    pub p: f64,
    pub n: u64,
    pub trials: usize,
    pub best_ratio: f64,
    pub ratio_error: f64,
    pub scaled: f64,
}

pub fn helson_probe(ps: &[f64], n: u64, trials: usize, seed: u64, table: &FactorizationTable) -> Result<Vec<HelsonRow>> {
    let opts = ScanOptions { trials, seed, ..Default::default() };
    ps.iter()
        .map(|&p| {
            if !(p > 0.0 && p < 1.0) {
                return Err(domain(format!("p = {p} must lie in (0, 1)")));
            }
            let row = &operator_norm_scan(p, &[n], Family::Random, &opts, table)?[0];
            Ok(HelsonRow { p, n, trials, best_ratio: row.ratio, ratio_error: row.ratio_error, scaled: (1.0 - p) * row.ratio })
        })
        .collect()
}
