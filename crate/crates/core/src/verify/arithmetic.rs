use rand::Rng;
use serde_json::json;

use super::{check, gcd, rel_diff, CheckReport, Ctx};
use crate::arithmetic::WeightKind;
use crate::error::Result;

const ALPHAS: [f64; 4] = [1.5, 2.0, 2.5, 3.0];

pub(super) fn run(ctx: &Ctx) -> Result<Vec<CheckReport>> {
    let t = ctx.table;
    let mut out = Vec::new();

    let top = (ctx.size(100_000, 1 << 22) as u64).min(t.limit());
    let mut bad = 0u64;
    for n in 2..=top {
        let q = t.smallest_prime_factor(n).unwrap_or(0);
        if q < 2 || n % q != 0 || !t.is_prime(q) {
            bad += 1;
        }
    }
    let listed = t.primes().iter().take_while(|&&q| q <= top).count();
    let sieved = (2..=top).filter(|&n| t.smallest_prime_factor(n) == Some(n)).count();
    out.push(check(
        "smallest_prime_factor",
        bad == 0 && listed == sieved,
        json!({"checked_up_to": top, "violations": bad, "primes_listed": listed, "primes_sieved": sieved}),
    ));

    let bound = ((t.limit() as f64).sqrt() as u64).min(10_000);
    let pairs = ctx.size(500, 5000);
    let mut rng = ctx.rng("multiplicativity", &[]);
    let mut worst = 0.0f64;
    let mut drawn = 0;
    while drawn < pairs {
        let m = rng.random_range(1..=bound);
        let n = rng.random_range(1..=bound);
        if gcd(m, n) != 1 {
            continue;
        }
        drawn += 1;
        for &a in &ALPHAS {
            for kind in [WeightKind::D, WeightKind::Phi] {
                let lhs = t.weight(m * n, a, kind)?;
                let rhs = t.weight(m, a, kind)? * t.weight(n, a, kind)?;
                worst = worst.max(rel_diff(lhs, rhs));
            }
        }
    }
    out.push(check(
        "multiplicativity",
        worst <= 1e-12,
        json!({"pairs": pairs, "max_index": bound, "alphas": ALPHAS, "max_relative_difference": worst}),
    ));

    let top = (ctx.size(20_000, 200_000) as u64).min(t.limit());
    let mut worst = 0.0f64;
    let mut square_free = 0u64;
    for n in 1..=top {
        if !t.is_square_free(n)? {
            continue;
        }
        square_free += 1;
        let big_omega = t.big_omega(n)? as i32;
        for &a in &ALPHAS {
            worst = worst.max(rel_diff(t.phi_alpha(n, a)?, a.powi(big_omega)));
        }
    }
    out.push(check(
        "square_free_identity",
        worst <= 1e-13,
        json!({"checked_up_to": top, "square_free": square_free, "max_relative_difference": worst}),
    ));

    let mut mismatches = 0u64;
    for n in 1..=top {
        for k in 1..=3 {
            let k = k as f64;
            if t.phi_alpha(n, k)? != t.d_alpha(n, k)? {
                mismatches += 1;
            }
        }
    }
    out.push(check("integer_agreement", mismatches == 0, json!({"checked_up_to": top, "mismatches": mismatches})));

    // Σ_{n ≤ x} d(n)/n = (log x)^2/2 + 2γ log x + γ^2 - 2γ_1 + O(x^{-1/2}).
    let x = (ctx.size(1 << 20, 1 << 22) as u64).min(t.limit()) as f64;
    let sum = t.weight_partial_sum(x, 2.0, WeightKind::D)?;
    let (gamma, gamma1) = (0.577_215_664_901_532_9, -0.072_815_845_483_676_7);
    let l = x.ln();
    let main = 0.5 * l * l + 2.0 * gamma * l + gamma * gamma - 2.0 * gamma1;
    let remainder = (sum - main).abs() * x.sqrt();
    out.push(check(
        "divisor_average_order",
        remainder <= 4.0,
        json!({"x": x, "partial_sum": sum, "main_term": main, "remainder_times_sqrt_x": remainder}),
    ));

    Ok(out)
}
