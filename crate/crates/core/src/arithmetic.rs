//! Sieve-backed multiplicative number theory.
//!
//! A [`FactorizationTable`] stores the smallest prime factor of every integer
//! up to a limit, so that any multiplicative weight evaluates in `O(Ω(n))`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numeric::{ln_gamma, CompensatedSum};

/// Default sieve limit, `2^24`.
pub const DEFAULT_SIEVE_LIMIT: u64 = 1 << 24;

/// Smallest-prime-factor table for `2..=limit` built by a linear sieve.
#[derive(Debug, Clone)]
pub struct FactorizationTable {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl FactorizationTable {
    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 || limit > u32::MAX as u64 {
            return Err(domain(format!("sieve limit {limit} outside 1..=2^32-1")));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u64> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let si = spf[i] as u64;
            for &p in &primes {
                if p > si {
                    break;
                }
                let m = i as u64 * p;
                if m > limit {
                    break;
                }
                spf[m as usize] = p as u32;
            }
        }
        Ok(Self { limit, spf, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// All primes up to the limit, increasing.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Smallest prime factor of `n` (`None` for `n < 2` or beyond the table).
    pub fn smallest_prime_factor(&self, n: u64) -> Option<u64> {
        if n < 2 || n > self.limit {
            None
        } else {
            Some(self.spf[n as usize] as u64)
        }
    }

    /// Zero-based position of the prime `p` in the increasing list of primes.
    pub fn prime_index(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok()
    }

    pub fn is_prime(&self, n: u64) -> bool {
        self.smallest_prime_factor(n) == Some(n)
    }

    fn check(&self, n: u64) -> Result<()> {
        if n == 0 {
            Err(domain("n must be positive"))
        } else if n > self.limit {
            Err(domain(format!("n = {n} exceeds the sieve limit {}", self.limit)))
        } else {
            Ok(())
        }
    }

    /// Iterates `(prime, exponent)` pairs with increasing primes; `n` must be
    /// in range.
    fn prime_powers(&self, mut n: u64) -> impl Iterator<Item = (u64, u32)> + '_ {
        std::iter::from_fn(move || {
            if n <= 1 {
                return None;
            }
            let p = self.spf[n as usize] as u64;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            Some((p, e))
        })
    }

    pub fn factorize(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        self.check(n)?;
        Ok(self.prime_powers(n).collect())
    }

    /// Like [`factorize`](Self::factorize), but indices above the limit are
    /// accepted when trial division by the tabulated primes brings them into
    /// range.
    pub fn factorize_extended(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        if n <= self.limit {
            return self.factorize(n);
        }
        let mut rest = n;
        let mut out = Vec::new();
        for &p in &self.primes {
            if rest <= self.limit {
                break;
            }
            if p.saturating_mul(p) > rest {
                // `rest` is prime but beyond the table.
                return Err(domain(format!("n = {n} has a prime factor beyond the sieve limit {}", self.limit)));
            }
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
        }
        if rest > self.limit {
            return Err(domain(format!("n = {n} has a prime factor beyond the sieve limit {}", self.limit)));
        }
        for (p, e) in self.prime_powers(rest) {
            match out.last_mut() {
                Some(last) if last.0 == p => last.1 += e,
                _ => out.push((p, e)),
            }
        }
        Ok(out)
    }

    /// Number of prime factors counted with multiplicity.
    pub fn big_omega(&self, n: u64) -> Result<u32> {
        self.check(n)?;
        Ok(self.prime_powers(n).map(|(_, e)| e).sum())
    }

    /// Number of distinct prime factors.
    pub fn small_omega(&self, n: u64) -> Result<u32> {
        self.check(n)?;
        Ok(self.prime_powers(n).count() as u32)
    }

    pub fn moebius(&self, n: u64) -> Result<i8> {
        self.check(n)?;
        let mut sign = 1i8;
        for (_, e) in self.prime_powers(n) {
            if e > 1 {
                return Ok(0);
            }
            sign = -sign;
        }
        Ok(sign)
    }

    pub fn is_square_free(&self, n: u64) -> Result<bool> {
        Ok(self.moebius(n)? != 0)
    }

    /// General divisor function `d_α(n)`, the coefficients of `ζ^α`.
    pub fn d_alpha(&self, n: u64, alpha: f64) -> Result<f64> {
        self.check(n)?;
        let weights = LocalWeights::divisor(alpha)?;
        Ok(weights.eval(self.prime_powers(n)))
    }

    /// `Φ_α(n) = d_{⌊α⌋}(n) (α/⌊α⌋)^{Ω(n)}`.
    pub fn phi_alpha(&self, n: u64, alpha: f64) -> Result<f64> {
        self.check(n)?;
        let weights = LocalWeights::interpolated(alpha)?;
        Ok(weights.eval(self.prime_powers(n)))
    }

    /// Evaluates a weight kind at `n`.
    pub fn weight(&self, n: u64, alpha: f64, kind: WeightKind) -> Result<f64> {
        self.check(n)?;
        let weights = LocalWeights::for_kind(alpha, kind)?;
        Ok(weights.eval(self.prime_powers(n)))
    }

    /// `Σ_{n ≤ x} w(n)/n` for the selected weight, compensated.
    pub fn weight_partial_sum(&self, x: f64, alpha: f64, kind: WeightKind) -> Result<f64> {
        Ok(*self.weight_partial_sums(&[x], alpha, kind)?.last().unwrap_or(&0.0))
    }

    /// Partial sums `Σ_{n ≤ x_i} w(n)/n` at an increasing list of cut points.
    pub fn weight_partial_sums(&self, xs: &[f64], alpha: f64, kind: WeightKind) -> Result<Vec<f64>> {
        let weights = LocalWeights::for_kind(alpha, kind)?;
        self.weighted_sums(xs, |n| weights.eval(self.prime_powers(n)) / n as f64)
    }

    /// Partial sums `Σ_{n ≤ x_i} w(n) g(n)` for the selected weight and an
    /// arbitrary factor `g`.
    pub fn weight_sums_with<F>(&self, xs: &[f64], alpha: f64, kind: WeightKind, mut g: F) -> Result<Vec<f64>>
    where
        F: FnMut(u64) -> f64,
    {
        let weights = LocalWeights::for_kind(alpha, kind)?;
        self.weighted_sums(xs, |n| weights.eval(self.prime_powers(n)) * g(n))
    }

    /// Compensated partial sums of an arbitrary summand at increasing cut
    /// points `xs` (each `≥ 1`, at most the limit).
    pub fn weighted_sums<F>(&self, xs: &[f64], mut term: F) -> Result<Vec<f64>>
    where
        F: FnMut(u64) -> f64,
    {
        if xs.windows(2).any(|w| w[1] < w[0]) {
            return Err(domain("cut points must be increasing"));
        }
        let mut out = Vec::with_capacity(xs.len());
        let mut acc = CompensatedSum::new();
        let mut n = 1u64;
        for &x in xs {
            if !(x >= 1.0) {
                return Err(domain(format!("cut point {x} must be at least 1")));
            }
            let top = x.floor() as u64;
            if top > self.limit {
                return Err(domain(format!("cut point {x} exceeds the sieve limit {}", self.limit)));
            }
            while n <= top {
                acc.add(term(n));
                n += 1;
            }
            out.push(acc.value());
        }
        Ok(out)
    }

    /// The first `k` primorials `p_1, p_1 p_2, …` (stops early on overflow or
    /// if the table runs out of primes).
    pub fn primorials(&self, k: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(k);
        let mut acc = 1u64;
        for &p in self.primes.iter().take(k) {
            match acc.checked_mul(p) {
                Some(v) => {
                    acc = v;
                    out.push(acc);
                }
                None => break,
            }
        }
        out
    }

    /// Empirical maximal order of the divisor function up to `n_max`:
    /// returns `(argmax n, max log d(n), max log d(n) · log log N / log N)`.
    pub fn divisor_max_order(&self, n_max: u64) -> Result<(u64, f64, f64)> {
        self.check(n_max)?;
        if n_max < 3 {
            return Err(domain("divisor maximal order needs N >= 3"));
        }
        let mut best = (1u64, 0.0f64);
        for n in 2..=n_max {
            let d: u64 = self.prime_powers(n).map(|(_, e)| e as u64 + 1).product();
            let ld = (d as f64).ln();
            if ld > best.1 {
                best = (n, ld);
            }
        }
        let l = (n_max as f64).ln();
        Ok((best.0, best.1, best.1 * l.ln() / l))
    }
}

/// Which weight enters a partial sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    /// `d_α(n)`
    D,
    /// `Φ_α(n)`
    Phi,
    /// `|μ(n)| d_α(n)`
    MuD,
}

impl std::str::FromStr for WeightKind {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d" => Ok(Self::D),
            "phi" => Ok(Self::Phi),
            "mu_d" => Ok(Self::MuD),
            other => Err(domain(format!("unknown weight kind {other:?}"))),
        }
    }
}

// Prime-power values of a multiplicative weight, tabulated by exponent.
// Exponents never exceed 63 for u64 arguments.
#[derive(Debug, Clone)]
struct LocalWeights {
    log_values: Vec<f64>,
    exact: Option<Vec<f64>>,
    square_free_only: bool,
}

const MAX_EXPONENT: usize = 64;

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha >= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("alpha = {alpha} must be a finite real >= 1")))
    }
}

/// `binom(e + k - 1, e)` for integer `k` as an exact integer when it fits.
fn integer_binomial(e: u64, k: u64) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 1..=e as u128 {
        acc = acc.checked_mul(k as u128 - 1 + i)? / i;
    }
    Some(acc)
}

impl LocalWeights {
    fn divisor(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if alpha.fract() == 0.0 && alpha <= 1e6 {
            return Ok(Self::integer_divisor(alpha as u64, 1.0));
        }
        let lg_alpha = ln_gamma(alpha);
        let log_values = (0..MAX_EXPONENT)
            .map(|e| ln_gamma(e as f64 + alpha) - ln_gamma(e as f64 + 1.0) - lg_alpha)
            .collect();
        Ok(Self { log_values, exact: None, square_free_only: false })
    }

    fn integer_divisor(k: u64, ratio: f64) -> Self {
        let mut exact = Vec::with_capacity(MAX_EXPONENT);
        let mut log_values = Vec::with_capacity(MAX_EXPONENT);
        let mut representable = true;
        for e in 0..MAX_EXPONENT as u64 {
            let b = integer_binomial(e, k);
            let value = match b {
                Some(b) if b < (1u128 << 53) => b as f64,
                _ => {
                    representable = false;
                    (ln_gamma(e as f64 + k as f64) - ln_gamma(e as f64 + 1.0) - ln_gamma(k as f64)).exp()
                }
            };
            let scaled = value * ratio.powi(e as i32);
            exact.push(scaled);
            log_values.push(value.ln() + e as f64 * ratio.ln());
        }
        Self { log_values, exact: representable.then_some(exact), square_free_only: false }
    }

    fn interpolated(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let k = alpha.floor();
        Ok(Self::integer_divisor(k as u64, alpha / k))
    }

    fn for_kind(alpha: f64, kind: WeightKind) -> Result<Self> {
        match kind {
            WeightKind::D => Self::divisor(alpha),
            WeightKind::Phi => Self::interpolated(alpha),
            WeightKind::MuD => {
                check_alpha(alpha)?;
                Ok(Self {
                    log_values: vec![0.0, alpha.ln()],
                    exact: Some(vec![1.0, alpha]),
                    square_free_only: true,
                })
            }
        }
    }

    fn eval(&self, powers: impl Iterator<Item = (u64, u32)>) -> f64 {
        match &self.exact {
            Some(table) => {
                let mut acc = 1.0;
                for (_, e) in powers {
                    if self.square_free_only && e > 1 {
                        return 0.0;
                    }
                    acc *= table[e as usize];
                }
                acc
            }
            None => {
                let mut log_acc = 0.0;
                for (_, e) in powers {
                    if self.square_free_only && e > 1 {
                        return 0.0;
                    }
                    log_acc += self.log_values[e as usize];
                }
                log_acc.exp()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> FactorizationTable {
        FactorizationTable::new(1_000_000).unwrap()
    }

    #[test]
    fn factorization_examples() {
        let t = table();
        assert_eq!(t.factorize(12).unwrap(), vec![(2, 2), (3, 1)]);
        assert_eq!(t.factorize(1).unwrap(), vec![]);
        assert_eq!(t.factorize(30).unwrap(), vec![(2, 1), (3, 1), (5, 1)]);
        assert!(t.factorize(0).is_err());
        assert!(t.factorize(1_000_001).is_err());
    }

    #[test]
    fn omega_and_moebius_examples() {
        let t = table();
        assert_eq!(t.big_omega(12).unwrap(), 3);
        assert_eq!(t.small_omega(12).unwrap(), 2);
        assert_eq!(t.moebius(30).unwrap(), -1);
        assert_eq!(t.moebius(12).unwrap(), 0);
        assert_eq!(t.moebius(1).unwrap(), 1);
        assert!(t.moebius(0).is_err());
    }

    #[test]
    fn sieve_invariants() {
        let t = FactorizationTable::new(5000).unwrap();
        for n in 2..=5000u64 {
            let p = t.smallest_prime_factor(n).unwrap();
            assert_eq!(n % p, 0);
            assert!((2..p).take_while(|d| d * d <= p).all(|d| p % d != 0));
        }
        let brute: Vec<u64> = (2..=5000u64)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect();
        assert_eq!(t.primes(), brute.as_slice());
    }

    #[test]
    fn divisor_function_examples() {
        let t = table();
        assert_eq!(t.d_alpha(6, 2.0).unwrap(), 4.0);
        // binom(2.5, 2) = 2.5 * 1.5 / 2, evaluated from the product formula.
        let expected = 2.5 * 1.5 / 2.0;
        assert!((t.d_alpha(4, 1.5).unwrap() - expected).abs() < 1e-14);
        assert_eq!(t.d_alpha(1, 1.7).unwrap(), 1.0);
        assert!(t.d_alpha(6, 0.5).is_err());
    }

    #[test]
    fn interpolated_weight_examples() {
        let t = table();
        assert!((t.phi_alpha(6, 2.5).unwrap() - 4.0 * 1.25 * 1.25).abs() < 1e-14);
        assert_eq!(t.phi_alpha(8, 3.0).unwrap(), 10.0);
        assert!((t.phi_alpha(30, 1.5).unwrap() - 3.375).abs() < 1e-14);
        assert!(t.phi_alpha(30, 0.9).is_err());
    }

    #[test]
    fn partial_sum_examples() {
        let t = table();
        assert_eq!(t.weight_partial_sum(2.0, 2.0, WeightKind::D).unwrap(), 2.0);
        let s = t.weight_partial_sum(3.0, 1.5, WeightKind::Phi).unwrap();
        assert!((s - (1.0 + 0.75 + 0.5)).abs() < 1e-15);
        // Σ d(n)/n = (log x)^2/2 + 2γ log x + O(1): the lower-order term is
        // still 25% of the leading one at x = 10^4, so check the expansion.
        let gamma = 0.577_215_664_901_532_9;
        let xs = [1e4, 1e6];
        let sums = t.weight_partial_sums(&xs, 2.0, WeightKind::D).unwrap();
        let mut rel = Vec::new();
        for (&x, &s) in xs.iter().zip(&sums) {
            let l = f64::ln(x);
            let lead = l * l / 2.0;
            assert!(((s - lead - 2.0 * gamma * l) / lead).abs() < 0.02, "x = {x}, s = {s}");
            rel.push((s - lead) / lead);
        }
        assert!(rel[1] < rel[0]);
    }

    #[test]
    fn square_free_weight_vanishes_off_support() {
        let t = table();
        assert_eq!(t.weight(12, 2.0, WeightKind::MuD).unwrap(), 0.0);
        assert_eq!(t.weight(30, 2.0, WeightKind::MuD).unwrap(), 8.0);
    }

    #[test]
    fn extended_factorization() {
        let t = FactorizationTable::new(100).unwrap();
        assert_eq!(t.factorize_extended(2u64.pow(20) * 9).unwrap(), vec![(2, 20), (3, 2)]);
        assert_eq!(t.factorize_extended(12).unwrap(), vec![(2, 2), (3, 1)]);
        assert_eq!(t.factorize_extended(4 * 97 * 89).unwrap(), vec![(2, 2), (89, 1), (97, 1)]);
        assert!(t.factorize_extended(101 * 103).is_err());
        assert!(t.factorize(2u64.pow(20)).is_err());
    }

    #[test]
    fn primorials_and_divisor_order() {
        let t = table();
        assert_eq!(t.primorials(5), vec![2, 6, 30, 210, 2310]);
        let (_, _, stat) = t.divisor_max_order(100_000).unwrap();
        // Nicolas-Robin: log d(n) <= 1.5379 log 2 · log n / log log n.
        assert!(stat > 0.0 && stat <= 1.5379 * std::f64::consts::LN_2);
    }
}
