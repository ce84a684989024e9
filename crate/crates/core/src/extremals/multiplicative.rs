use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{c1_closed_form, ck_oracle, ck_upper_lemma, OracleSettings};
use crate::arithmetic::FactorizationTable;
use crate::error::{domain, Result};

/// Fixed seed for oracle lower bounds inside multiplicative assembly.
pub const ASSEMBLY_ORACLE_SEED: u64 = 0xC0EF;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    Trivial,
    ClosedForm,
    Lemma,
    Oracle,
}

/// Two-sided bound for `C(k,p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoeffBound {
    pub k: u32,
    pub p: f64,
    pub lower: f64,
    pub upper: f64,
    pub lower_method: BoundMethod,
    pub upper_method: BoundMethod,
}

/// Two-sided bound for the multiplicative constant of `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicativeBound {
    pub n: u64,
    pub p: f64,
    pub lower: f64,
    pub upper: f64,
    pub factors: Vec<(u64, CoeffBound)>,
}

/// `ck_oracle` at degree `k + 4` with 8 restarts and [`ASSEMBLY_ORACLE_SEED`], memoized.
pub fn assembly_oracle(k: u32, p: f64) -> Result<f64> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u64), f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&v) = cache.lock().unwrap().get(&(k, p.to_bits())) {
        return Ok(v);
    }
    let settings = OracleSettings::new(k as usize + 4, 8, ASSEMBLY_ORACLE_SEED);
    let v = ck_oracle(k as usize, p, &settings)?.value;
    cache.lock().unwrap().insert((k, p.to_bits()), v);
    Ok(v)
}

/// Bound for a single prime power exponent `k`.
pub fn coeff_bound(k: u32, p: f64) -> Result<CoeffBound> {
    let c1 = c1_closed_form(p)?;
    if k == 0 || p >= 1.0 {
        return Ok(CoeffBound { k, p, lower: 1.0, upper: 1.0, lower_method: BoundMethod::Trivial, upper_method: BoundMethod::Trivial });
    }
    if k == 1 {
        return Ok(CoeffBound { k, p, lower: c1, upper: c1, lower_method: BoundMethod::ClosedForm, upper_method: BoundMethod::ClosedForm });
    }
    let upper = ck_upper_lemma(k, p)?.value;
    let lower = assembly_oracle(k, p)?.min(upper);
    Ok(CoeffBound { k, p, lower, upper, lower_method: BoundMethod::Oracle, upper_method: BoundMethod::Lemma })
}

/// Product of [`coeff_bound`] over the prime factorization of `n`.
pub fn c_multiplicative(n: u64, p: f64, table: &FactorizationTable) -> Result<MultiplicativeBound> {
    let mut lower = 1.0;
    let mut upper = 1.0;
    let mut factors = Vec::new();
    for (q, e) in table.factorize(n)? {
        let b = coeff_bound(e, p)?;
        lower *= b.lower;
        upper *= b.upper;
        factors.push((q, b));
    }
    Ok(MultiplicativeBound { n, p, lower, upper, factors })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthMode {
    SquareFreePrimorials,
    All,
}

impl std::str::FromStr for GrowthMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square_free_primorials" => Ok(GrowthMode::SquareFreePrimorials),
            "all" => Ok(GrowthMode::All),
            _ => Err(crate::error::config(format!("unknown growth mode `{s}`"))),
        }
    }
}

/// One row of a growth profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: u64,
    pub log_lower: f64,
    pub log_upper: f64,
    /// `log C_lower(n,p) · log log n / log n`.
    pub statistic_lower: f64,
    pub statistic_upper: f64,
}

fn growth_row(b: &MultiplicativeBound) -> GrowthRow {
    let l = (b.n as f64).ln();
    let scale = l.ln() / l;
    GrowthRow {
        n: b.n,
        log_lower: b.lower.ln(),
        log_upper: b.upper.ln(),
        statistic_lower: b.lower.ln() * scale,
        statistic_upper: b.upper.ln() * scale,
    }
}

/// Normalized growth of the multiplicative constant.
///
/// `SquareFreePrimorials` visits the first `steps` primorials. `All` grows
/// `n` greedily: each step multiplies by the prime (new or already present)
/// whose bump in the lower bound gives the largest gain in `log C` per unit
/// of `log n`, with exponents capped at `max_exponent`.
pub fn growth_profile(
    p: f64,
    steps: usize,
    mode: GrowthMode,
    max_exponent: u32,
    table: &FactorizationTable,
) -> Result<Vec<GrowthRow>> {
    if !(p > 0.0) {
        return Err(domain(format!("p = {p} must be positive")));
    }
    match mode {
        GrowthMode::SquareFreePrimorials => {
            let ns = table.primorials(steps);
            if ns.len() < steps {
                return Err(domain("primorials exceed the sieve or u64 range"));
            }
            ns.iter().map(|&n| c_multiplicative(n, p, table).map(|b| growth_row(&b))).collect()
        }
        GrowthMode::All => {
            let primes = table.primes();
            let mut exps: Vec<u32> = Vec::new();
            let mut n = 1u64;
            let mut rows = Vec::with_capacity(steps);
            for _ in 0..steps {
                let mut best: Option<(f64, usize)> = None;
                for j in 0..=exps.len().min(primes.len() - 1) {
                    let e = exps.get(j).copied().unwrap_or(0);
                    if e >= max_exponent || n.checked_mul(primes[j]).is_none_or(|m| m > table.limit()) {
                        continue;
                    }
                    let gain = (coeff_bound(e + 1, p)?.lower / coeff_bound(e, p)?.lower).ln() / (primes[j] as f64).ln();
                    if best.is_none_or(|(g, _)| gain > g) {
                        best = Some((gain, j));
                    }
                }
                let Some((_, j)) = best else { break };
                if j == exps.len() {
                    exps.push(0);
                }
                exps[j] += 1;
                n *= primes[j];
                rows.push(growth_row(&c_multiplicative(n, p, table)?));
            }
            Ok(rows)
        }
    }
}
