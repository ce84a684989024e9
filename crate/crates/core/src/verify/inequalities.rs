use serde_json::json;

use super::{check, CheckReport, Ctx};
use crate::error::Result;
use crate::hardy_littlewood::{check_lower, check_power_family, check_upper};
use crate::norms::norm_dirichlet;
use crate::operators::{weissler_check, weissler_violation_search};
use crate::random::{random_dirichlet, random_univariate, smooth_support};

pub(super) fn run_hl(ctx: &Ctx) -> Result<Vec<CheckReport>> {
    let t = ctx.table;
    let trials = ctx.trials.unwrap_or(ctx.size(100, 200));
    let support = smooth_support(t, 30, 3)?;
    let mut out = Vec::new();

    for (name, ps, lower) in [("lower_weighted", [2.0 / 3.0, 1.0, 2.0], true), ("upper_weighted", [2.0, 4.0, 6.0], false)] {
        let mut rng = ctx.rng(name, &[]);
        let mut violations = 0;
        let mut min_margin = f64::INFINITY;
        for i in 0..trials {
            let f = random_dirichlet(&mut rng, &support, 0.5)?;
            for &p in &ps {
                let norm = norm_dirichlet(&f, p, t, ctx.seed_for(name, &[i as u64]))?;
                let c = if lower { check_lower(&f, &norm, t)? } else { check_upper(&f, &norm, t)? };
                min_margin = min_margin.min(c.margin / c.coefficient_side.max(c.norm.value));
                violations += usize::from(!c.holds);
            }
        }
        out.push(check(name, violations == 0, json!({"polynomials": trials, "p": ps, "violations": violations, "min_relative_margin": min_margin})));
    }

    // f = g^k at p = 2/k, where ‖f‖_p = ‖g‖_2^k exactly.
    let base = smooth_support(t, 12, 3)?;
    let mut rng = ctx.rng("power_family", &[]);
    let mut violations = 0;
    let mut min_margin = f64::INFINITY;
    for _ in 0..trials {
        let g = random_dirichlet(&mut rng, &base, 0.6)?;
        for k in 1..=3 {
            let c = check_power_family(&g, k, t)?;
            min_margin = min_margin.min(c.margin / c.norm.value);
            violations += usize::from(!c.holds);
        }
    }
    out.push(check(
        "power_family_exact",
        violations == 0,
        json!({"polynomials": trials, "powers": [1, 2, 3], "violations": violations, "min_relative_margin": min_margin}),
    ));
    Ok(out)
}

pub(super) fn run_weissler(ctx: &Ctx) -> Result<Vec<CheckReport>> {
    let trials = ctx.trials.unwrap_or(ctx.size(100, 500));
    let mut out = Vec::new();
    for (p, q) in [(1.0, 2.0), (2.0, 4.0), (0.5, 1.0)] {
        let r = (p / q as f64).sqrt();
        let name = format!("boundary_p{p}_q{q}");
        let mut rng = ctx.rng(&name, &[]);
        let mut violations = 0;
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let c = weissler_check(&random_univariate(&mut rng, 8), p, q, r)?;
            worst = worst.max(c.lhs.value / c.rhs.value);
            violations += usize::from(!c.holds);
        }
        out.push(check(&name, violations == 0, json!({"p": p, "q": q, "r": r, "polynomials": trials, "violations": violations, "max_ratio": worst})));
    }
    let r = 0.5f64.sqrt() + 0.05;
    let s = weissler_violation_search(2.0, 4.0, r, 4, ctx.size(4, 8), ctx.seed_for("violation_search", &[]))?;
    out.push(check(
        "violation_beyond_boundary",
        s.found,
        json!({"p": 2.0, "q": 4.0, "r": r, "best_ratio": s.best_ratio, "restart": s.restart, "witness": s.polynomial.coefficients().iter().map(|c| [c.re, c.im]).collect::<Vec<_>>()}),
    ));
    Ok(out)
}
