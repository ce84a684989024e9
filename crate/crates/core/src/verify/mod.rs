//! Seeded invariant suites. Every suite returns a list of named checks with
//! their measured quantities; the JSON report holds no timings, so equal
//! seeds give byte-identical reports.

mod arithmetic;
mod coeff;
mod functionals;
mod inequalities;
mod norms;
mod partial_sum;

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arithmetic::FactorizationTable;
use crate::error::{config, Result};
use crate::rng::{label, task_rng, task_seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Arithmetic,
    Norms,
    HlInequalities,
    Weissler,
    Coeff,
    PartialSum,
    Functionals,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Arithmetic,
        Suite::Norms,
        Suite::HlInequalities,
        Suite::Weissler,
        Suite::Coeff,
        Suite::PartialSum,
        Suite::Functionals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Arithmetic => "arithmetic",
            Suite::Norms => "norms",
            Suite::HlInequalities => "hl-inequalities",
            Suite::Weissler => "weissler",
            Suite::Coeff => "coeff",
            Suite::PartialSum => "partial-sum",
            Suite::Functionals => "functionals",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_selection(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            Ok(Suite::ALL.to_vec())
        } else {
            Ok(vec![s.parse()?])
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| config(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Smoke,
    Full,
}

impl FromStr for Scale {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smoke" => Ok(Scale::Smoke),
            "full" => Ok(Scale::Full),
            _ => Err(config(format!("unknown scale `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub scale: Scale,
    pub seed: u64,
    /// Overrides the number of random polynomials in the inequality suites.
    pub trials: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { scale: Scale::Smoke, seed: 0, trials: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub scale: Scale,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values serialize")
    }
}

/// Per-suite context: sizes by scale and independent generators per check.
pub(crate) struct Ctx<'a> {
    pub scale: Scale,
    pub seed: u64,
    pub trials: Option<usize>,
    pub table: &'a FactorizationTable,
    suite: Suite,
}

impl Ctx<'_> {
    pub fn size(&self, smoke: usize, full: usize) -> usize {
        match self.scale {
            Scale::Smoke => smoke,
            Scale::Full => full,
        }
    }

    pub fn rng(&self, check: &str, path: &[u64]) -> ChaCha8Rng {
        let mut full = vec![label(self.suite.name()), label(check)];
        full.extend_from_slice(path);
        task_rng(self.seed, &full)
    }

    pub fn seed_for(&self, check: &str, path: &[u64]) -> u64 {
        let mut full = vec![label(self.suite.name()), label(check)];
        full.extend_from_slice(path);
        task_seed(self.seed, &full)
    }
}

pub(crate) fn check(name: &str, passed: bool, details: Value) -> CheckReport {
    CheckReport { name: name.to_string(), passed, details }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions, table: &FactorizationTable) -> Result<SuiteReport> {
    let ctx = Ctx { scale: opts.scale, seed: opts.seed, trials: opts.trials, table, suite };
    let checks = match suite {
        Suite::Arithmetic => arithmetic::run(&ctx)?,
        Suite::Norms => norms::run(&ctx)?,
        Suite::HlInequalities => inequalities::run_hl(&ctx)?,
        Suite::Weissler => inequalities::run_weissler(&ctx)?,
        Suite::Coeff => coeff::run(&ctx)?,
        Suite::PartialSum => partial_sum::run(&ctx)?,
        Suite::Functionals => functionals::run(&ctx)?,
    };
    Ok(SuiteReport { suite, passed: checks.iter().all(|c| c.passed), checks })
}

pub fn run(suites: &[Suite], opts: &VerifyOptions, table: &FactorizationTable) -> Result<VerifyReport> {
    let reports = suites.iter().map(|&s| run_suite(s, opts, table)).collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport { seed: opts.seed, scale: opts.scale, passed: reports.iter().all(|r| r.passed), suites: reports })
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", s.name()));
        }
        assert_eq!(Suite::parse_selection("all").unwrap().len(), 7);
        assert!("everything".parse::<Suite>().is_err());
        assert!("medium".parse::<Scale>().is_err());
    }
}
