use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::check_beta;
use crate::arithmetic::{FactorizationTable, WeightKind};
use crate::error::{domain, Result};

/// A series is convergent-trend when the last block increment is at most
/// this fraction of the one before.
pub const TREND_FACTOR: f64 = 0.9;

/// One `(p, β)` cell of the `φ_β ∈ H^p` scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipRow {
    pub p: f64,
    pub beta: f64,
    /// Cutoffs `N_i` with `log N` doubling from one to the next.
    pub checkpoints: Vec<u64>,
    /// `Σ_{n ≤ N_i} Φ_{p/2}(n) / (n (log* n)^{2β})`.
    pub majorant: Vec<f64>,
    /// `Σ_{n ≤ N_i} |μ(n)| (kp/2)^{Ω(n)} / (n (log* n)^{2kβ})` with `k = ⌊p⌋`.
    pub minorant: Vec<f64>,
    /// Ratio of the last two majorant increments.
    pub majorant_ratio: f64,
    pub minorant_ratio: f64,
    /// Classification from the majorant alone.
    pub convergent: bool,
}

fn increment_ratio(s: &[f64]) -> f64 {
    let k = s.len();
    (s[k - 1] - s[k - 2]) / (s[k - 2] - s[k - 3])
}

/// Scans `p ≥ 2`, `β > 0` with checkpoints `N_max^{1/8}, N_max^{1/4},
/// N_max^{1/2}, N_max`.
pub fn phi_membership_scan(
    ps: &[f64],
    betas: &[f64],
    n_max: u64,
    table: &FactorizationTable,
) -> Result<Vec<MembershipRow>> {
    if n_max < 256 {
        return Err(domain("N must be at least 256"));
    }
    let top = n_max as f64;
    let checkpoints: Vec<u64> = [0.125, 0.25, 0.5, 1.0].iter().map(|&e| top.powf(e).floor() as u64).collect();
    let xs: Vec<f64> = checkpoints.iter().map(|&n| n as f64).collect();
    let cells: Vec<(f64, f64)> = ps.iter().flat_map(|&p| betas.iter().map(move |&b| (p, b))).collect();
    cells
        .par_iter()
        .map(|&(p, beta)| {
            if !(p >= 2.0 && p.is_finite()) {
                return Err(domain(format!("p = {p} must be at least 2")));
            }
            check_beta(beta)?;
            let log_star = |n: u64| if n <= 1 { 1.0 } else { (n as f64).ln() };
            let majorant =
                table.weight_sums_with(&xs, p / 2.0, WeightKind::Phi, |n| 1.0 / (n as f64 * log_star(n).powf(2.0 * beta)))?;
            let k = p.floor();
            let minorant = table.weight_sums_with(&xs, k * p / 2.0, WeightKind::MuD, |n| {
                1.0 / (n as f64 * log_star(n).powf(2.0 * k * beta))
            })?;
            let majorant_ratio = increment_ratio(&majorant);
            Ok(MembershipRow {
                p,
                beta,
                checkpoints: checkpoints.clone(),
                minorant_ratio: increment_ratio(&minorant),
                majorant,
                minorant,
                majorant_ratio,
                convergent: majorant_ratio <= TREND_FACTOR,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l2_examples() {
        let t = FactorizationTable::new(1 << 20).unwrap();
        let rows = phi_membership_scan(&[2.0], &[0.4, 0.75], 1 << 20, &t).unwrap();
        assert!(!rows[0].convergent);
        assert!(rows[1].convergent);
        assert!(rows[0].majorant_ratio > 1.0);
    }
}
