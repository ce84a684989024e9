use rand::Rng;
use serde_json::json;

use super::{check, gcd, rel_diff, CheckReport, Ctx};
use crate::error::Result;
use crate::extremals::{
    assembly_oracle, c1_closed_form, c_multiplicative, ck_oracle, ck_upper_lemma, extremal_c1, growth_profile,
    C1Variant, GrowthMode, OracleSettings,
};
use crate::norms::norm_disc;

const PS: [f64; 3] = [0.25, 0.5, 0.75];

pub(super) fn run(ctx: &Ctx) -> Result<Vec<CheckReport>> {
    let t = ctx.table;
    let mut out = Vec::new();

    let mut rows = Vec::new();
    let mut ok = true;
    for p in PS {
        let c1 = c1_closed_form(p)?;
        let v = ck_oracle(1, p, &OracleSettings::new(6, 32, ctx.seed_for("first_coefficient", &[p.to_bits()])))?.value;
        ok &= v >= c1 - 1e-3 && v <= c1 + 1e-9;
        rows.push(json!({"p": p, "closed_form": c1, "oracle": v, "gap": c1 - v}));
    }
    out.push(check("first_coefficient_oracle", ok, json!({"degree": 6, "restarts": 32, "rows": rows})));

    let mut rows = Vec::new();
    let mut ok = true;
    for p in [0.25, 0.5, 2.0 / 3.0, 1.0] {
        let e = extremal_c1(p, C1Variant::C, None)?;
        let norm = norm_disc(&e.polynomial, p, None)?;
        let value = e.polynomial.coefficient(1).norm() / norm.value;
        let gap = (value - c1_closed_form(p)?).abs();
        ok &= e.exact && gap <= 1e-6;
        rows.push(json!({"p": p, "norm": norm.value, "norm_error": norm.error, "ratio": value, "gap": gap}));
    }
    out.push(check("extremal_attains_first_coefficient", ok, json!({"rows": rows})));

    let kmax = 6;
    let mut rows = Vec::new();
    let mut ok = true;
    for p in PS {
        for k in 1..=kmax {
            let upper = ck_upper_lemma(k, p)?.value;
            let oracle = assembly_oracle(k, p)?;
            ok &= oracle <= upper + 1e-9;
            let mut row = json!({"p": p, "k": k, "upper": upper, "oracle": oracle, "slack": upper - oracle});
            if k == 1 {
                let strict = upper - c1_closed_form(p)?;
                ok &= strict > 0.0;
                row["slack_over_closed_form"] = json!(strict);
            }
            rows.push(row);
        }
    }
    out.push(check("upper_bound_sandwich", ok, json!({"rows": rows})));

    let mut worst = 0.0f64;
    for p in [1.0, 1.5, 2.0] {
        for k in 1..=3 {
            let v = ck_oracle(k, p, &OracleSettings::new(k + 3, 4, ctx.seed_for("trivial_range", &[k as u64])))?.value;
            worst = worst.max((v - 1.0).abs());
        }
    }
    out.push(check("trivial_for_p_at_least_one", worst <= 1e-6, json!({"p": [1.0, 1.5, 2.0], "k": [1, 2, 3], "max_gap": worst})));

    let pairs = ctx.size(200, 2000);
    let mut rng = ctx.rng("multiplicative_constant", &[]);
    let mut worst = 0.0f64;
    let mut drawn = 0;
    while drawn < pairs {
        let m = rng.random_range(1..=64u64);
        let n = rng.random_range(1..=64u64);
        if gcd(m, n) != 1 {
            continue;
        }
        drawn += 1;
        for p in [0.5, 1.5] {
            let mn = c_multiplicative(m * n, p, t)?;
            let (a, b) = (c_multiplicative(m, p, t)?, c_multiplicative(n, p, t)?);
            worst = worst.max(rel_diff(mn.lower, a.lower * b.lower)).max(rel_diff(mn.upper, a.upper * b.upper));
        }
    }
    out.push(check("multiplicative_constant", worst <= 1e-13, json!({"pairs": pairs, "max_relative_difference": worst})));

    let c1 = c1_closed_form(0.5)?;
    let mut worst = 0.0f64;
    for n in 1..=10_000u64 {
        if t.is_square_free(n)? {
            let b = c_multiplicative(n, 0.5, t)?;
            let expect = c1.powi(t.small_omega(n)? as i32);
            worst = worst.max(rel_diff(b.lower, expect)).max(rel_diff(b.upper, expect));
        }
    }
    out.push(check("square_free_closed_form", worst <= 1e-13, json!({"checked_up_to": 10_000, "max_relative_difference": worst})));

    // upper(k) / k^{1/p-1} settles toward min_c e^{c/2} c^{1-1/p}, attained at c = 2(1/p - 1).
    let mut rows = Vec::new();
    let mut ok = true;
    for p in PS {
        let scaled = (1..=64u32)
            .map(|k| ck_upper_lemma(k, p).map(|b| b.value / (k as f64).powf(1.0 / p - 1.0)))
            .collect::<Result<Vec<f64>>>()?;
        let fitted = scaled.iter().cloned().fold(0.0, f64::max);
        let drift = scaled[63] / scaled[31] - 1.0;
        let c = 2.0 * (1.0 / p - 1.0);
        let limit = (0.5 * c).exp() * c.powf(1.0 - 1.0 / p);
        ok &= fitted.is_finite() && drift.abs() <= 0.1;
        rows.push(json!({"p": p, "fitted_constant": fitted, "scaled_k32": scaled[31], "scaled_k64": scaled[63], "drift": drift, "limit": limit}));
    }
    out.push(check("polynomial_growth_in_k", ok, json!({"rows": rows})));

    let steps = ctx.size(5, 7);
    let rows = growth_profile(0.5, steps, GrowthMode::SquareFreePrimorials, 1, t)?;
    let stats: Vec<f64> = rows.iter().map(|r| r.statistic_lower).collect();
    out.push(check(
        "square_free_growth",
        stats.windows(2).all(|w| w[1] > w[0]),
        json!({"p": 0.5, "n": rows.iter().map(|r| r.n).collect::<Vec<_>>(), "statistic": stats}),
    ));

    Ok(out)
}
