//! Flat row types for the CSV tables written by the command-line tool. The
//! field order of each struct is its column order.

use serde::{Deserialize, Serialize};

use crate::extremals::{CoeffBound, GrowthMode, GrowthRow};
use crate::functionals::{DualRatioScan, MembershipRow, PsiClassification};
use crate::norms::NormEstimate;
use crate::operators::{BernsteinRow, PartialSumExperiment};

/// A row type with a fixed column list.
pub trait Record: Serialize {
    const COLUMNS: &'static [&'static str];
}

macro_rules! record {
    ($(#[$m:meta])* pub struct $name:ident { $(pub $field:ident: $ty:ty,)* }) => {
        $(#[$m])*
        #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
        pub struct $name { $(pub $field: $ty,)* }

        impl Record for $name {
            const COLUMNS: &'static [&'static str] = &[$(stringify!($field)),*];
        }
    };
}

record! {
    /// One norm evaluation.
    pub struct NormRecord {
        pub value: f64,
        pub p: f64,
        pub method: String,
        pub error: f64,
        pub samples: u64,
        pub seed: u64,
    }
}

impl From<&NormEstimate> for NormRecord {
    fn from(e: &NormEstimate) -> Self {
        Self { value: e.value, p: e.p, method: e.method.as_str().to_string(), error: e.error, samples: e.samples, seed: e.seed }
    }
}

record! {
    /// Generic experiment row: parameters as `key=value` pairs joined by `;`.
    pub struct ExperimentRecord {
        pub experiment: String,
        pub parameters: String,
        pub value: f64,
        pub error: f64,
        pub seed: u64,
    }
}

record! {
    pub struct DualRatioRecord {
        pub p: f64,
        pub beta: f64,
        pub n: u64,
        pub pairing: f64,
        pub pairing_error: f64,
        pub norm: f64,
        pub ratio: f64,
        pub log_ratio: f64,
        pub log_log_n: f64,
        pub finite_pairing: f64,
        pub finite_ratio: f64,
        pub slope: f64,
        pub intercept: f64,
        pub predicted_slope: f64,
    }
}

impl DualRatioRecord {
    pub fn rows(scan: &DualRatioScan) -> Vec<Self> {
        scan.rows
            .iter()
            .map(|r| Self {
                p: scan.p,
                beta: scan.beta,
                n: r.n,
                pairing: r.pairing,
                pairing_error: r.pairing_error,
                norm: r.norm,
                ratio: r.ratio,
                log_ratio: r.log_ratio,
                log_log_n: r.log_log_n,
                finite_pairing: r.finite_pairing,
                finite_ratio: r.finite_ratio,
                slope: scan.slope,
                intercept: scan.intercept,
                predicted_slope: scan.predicted,
            })
            .collect()
    }
}

record! {
    pub struct GrowthRecord {
        pub p: f64,
        pub mode: String,
        pub n: u64,
        pub log_lower: f64,
        pub log_upper: f64,
        pub statistic_lower: f64,
        pub statistic_upper: f64,
    }
}

impl GrowthRecord {
    pub fn new(p: f64, mode: GrowthMode, r: &GrowthRow) -> Self {
        let mode = match mode {
            GrowthMode::SquareFreePrimorials => "square_free_primorials",
            GrowthMode::All => "all",
        };
        Self {
            p,
            mode: mode.to_string(),
            n: r.n,
            log_lower: r.log_lower,
            log_upper: r.log_upper,
            statistic_lower: r.statistic_lower,
            statistic_upper: r.statistic_upper,
        }
    }
}

record! {
    pub struct CoeffBoundRecord {
        pub k: u32,
        pub p: f64,
        pub lower: f64,
        pub upper: f64,
        pub lower_method: String,
        pub upper_method: String,
    }
}

impl From<&CoeffBound> for CoeffBoundRecord {
    fn from(b: &CoeffBound) -> Self {
        let name = |m| serde_json::to_value(m).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        Self { k: b.k, p: b.p, lower: b.lower, upper: b.upper, lower_method: name(b.lower_method), upper_method: name(b.upper_method) }
    }
}

record! {
    /// Best trial per `(N, p, family)`. Optional columns are empty when they
    /// do not apply to the family.
    pub struct PartialSumRecord {
        pub family: String,
        pub p: f64,
        pub n: u64,
        pub k: Option<usize>,
        pub trials: usize,
        pub witness: usize,
        pub ratio: f64,
        pub ratio_error: f64,
        pub norm_full: f64,
        pub norm_truncated: f64,
        pub bign_bound: Option<f64>,
        pub bign_max: Option<f64>,
        pub bign_holds: Option<bool>,
        pub statistic: Option<f64>,
        pub reference: Option<f64>,
        pub seed: u64,
    }
}

impl From<&PartialSumExperiment> for PartialSumRecord {
    fn from(e: &PartialSumExperiment) -> Self {
        Self {
            family: e.family.as_str().to_string(),
            p: e.p,
            n: e.n,
            k: e.k,
            trials: e.trials,
            witness: e.witness,
            ratio: e.ratio,
            ratio_error: e.ratio_error,
            norm_full: e.norm_full,
            norm_truncated: e.norm_truncated,
            bign_bound: e.bign_bound,
            bign_max: e.bign_max,
            bign_holds: e.bign_holds,
            statistic: e.statistic,
            reference: e.reference,
            seed: e.seed,
        }
    }
}

record! {
    /// One `(p, β)` cell; the sums are taken at the last checkpoint.
    pub struct MembershipRecord {
        pub p: f64,
        pub beta: f64,
        pub n_max: u64,
        pub majorant: f64,
        pub minorant: f64,
        pub majorant_ratio: f64,
        pub minorant_ratio: f64,
        pub convergent: bool,
    }
}

impl From<&MembershipRow> for MembershipRecord {
    fn from(r: &MembershipRow) -> Self {
        Self {
            p: r.p,
            beta: r.beta,
            n_max: *r.checkpoints.last().unwrap_or(&0),
            majorant: *r.majorant.last().unwrap_or(&0.0),
            minorant: *r.minorant.last().unwrap_or(&0.0),
            majorant_ratio: r.majorant_ratio,
            minorant_ratio: r.minorant_ratio,
            convergent: r.convergent,
        }
    }
}

record! {
    pub struct BernsteinRecord {
        pub n: usize,
        pub p: f64,
        pub samples: usize,
        pub c_star: f64,
        pub c_random: f64,
        pub c_monomial: f64,
        pub witness: String,
    }
}

impl From<&BernsteinRow> for BernsteinRecord {
    fn from(r: &BernsteinRow) -> Self {
        Self {
            n: r.n,
            p: r.p,
            samples: r.samples,
            c_star: r.c_star,
            c_random: r.c_random,
            c_monomial: r.c_monomial,
            witness: r.witness.clone(),
        }
    }
}

record! {
    pub struct PsiRecord {
        pub p: f64,
        pub beta: f64,
        pub q: f64,
        pub j_max: usize,
        pub surrogate: f64,
        pub increment_ratio: f64,
        pub exponent: f64,
        pub convergent: bool,
    }
}

impl From<&PsiClassification> for PsiRecord {
    fn from(c: &PsiClassification) -> Self {
        Self {
            p: c.p,
            beta: c.beta,
            q: c.q,
            j_max: *c.cutoffs.last().unwrap_or(&0),
            surrogate: *c.sums.last().unwrap_or(&0.0),
            increment_ratio: c.increment_ratio,
            exponent: c.exponent,
            convergent: c.convergent,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys<T: Record>(row: &T) -> Vec<String> {
        match serde_json::to_value(row).unwrap() {
            serde_json::Value::Object(m) => {
                let mut k: Vec<String> = m.keys().cloned().collect();
                k.sort();
                k
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn columns_match_fields() {
        let r = NormRecord { value: 1.0, p: 2.0, method: "exact_l2".into(), error: 0.0, samples: 0, seed: 0 };
        let mut c: Vec<String> = NormRecord::COLUMNS.iter().map(|s| s.to_string()).collect();
        c.sort();
        assert_eq!(keys(&r), c);
        assert_eq!(NormRecord::COLUMNS, ["value", "p", "method", "error", "samples", "seed"]);
    }
}
