use serde_json::json;

use super::{check, CheckReport, Ctx};
use crate::error::Result;
use crate::operators::{
    bernstein_constant_search, gn_certificate, helson_probe, lower_bound_big_n, operator_norm_scan, shifted_gn, Family,
    GnCase, ScanOptions,
};

pub(super) fn run(ctx: &Ctx) -> Result<Vec<CheckReport>> {
    let t = ctx.table;
    let mut out = Vec::new();

    let kmax = ctx.size(2, 3);
    let mut rows = Vec::new();
    let mut ok = true;
    for k in 1..=kmax {
        let c = lower_bound_big_n(k, 0.5, None, t, ctx.seed_for("truncation_lower_bound", &[k as u64]))?;
        ok &= c.holds;
        rows.push(json!({"k": k, "m": c.m, "norm_fm": c.norm_fm.value, "max": c.max, "max_error": c.max_error, "bound": c.bound}));
    }
    out.push(check("truncation_lower_bound", ok, json!({"p": 0.5, "rows": rows})));

    let top = 100_000u64;
    let mut failures = Vec::new();
    for n in 6..=top {
        for case in [GnCase::KeepTop, GnCase::DropTop] {
            if !gn_certificate(n, case)?.holds() && failures.len() < 10 {
                failures.push(json!({"n": n, "case": case.as_str()}));
            }
        }
    }
    out.push(check("shift_certificates", failures.is_empty(), json!({"from": 6, "to": top, "failures": failures})));

    let ns: Vec<u64> = if ctx.size(0, 1) == 1 { vec![100, 1000, 10_000] } else { vec![100, 1000] };
    let mut rows = Vec::new();
    let mut ok = true;
    for &n in &ns {
        let g = shifted_gn(n, 0.5, None, t, ctx.seed_for("shift_identity", &[n]))?;
        ok &= g.identity_verified && g.certificate.holds();
        rows.push(json!({"n": n, "case": g.certificate.case.as_str(), "x": g.certificate.x, "kept": g.certificate.kept, "ratio": g.truncated_norm.value / g.norm.value}));
    }
    out.push(check("shift_identity", ok, json!({"p": 0.5, "rows": rows})));

    let opts = ScanOptions { trials: ctx.size(20, 50), seed: ctx.seed_for("l2_contraction", &[]), ..Default::default() };
    let rows = operator_norm_scan(2.0, &[8, 32], Family::Random, &opts, t)?;
    let worst = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    out.push(check("l2_contraction", worst <= 1.0 + 1e-12, json!({"n": [8, 32], "trials": opts.trials, "max_ratio": worst})));

    let opts = ScanOptions { trials: ctx.size(20, 200), seed: ctx.seed_for("random_p1", &[]), ..Default::default() };
    let r = &operator_norm_scan(1.0, &[64], Family::Random, &opts, t)?[0];
    out.push(check(
        "random_family_p1",
        r.ratio >= 1.0 - r.ratio_error - 1e-12,
        json!({"n": 64, "trials": opts.trials, "max_ratio": r.ratio, "ratio_error": r.ratio_error, "witness": r.witness}),
    ));

    let ns: Vec<u64> = if ctx.size(0, 1) == 1 { vec![2, 6, 30, 210] } else { vec![2, 6, 30] };
    let opts = ScanOptions { trials: 1, seed: ctx.seed_for("extremal_growth", &[]), ..Default::default() };
    let rows = operator_norm_scan(0.5, &ns, Family::ExtremalFm, &opts, t)?;
    let ratios: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
    out.push(check(
        "extremal_ratio_growth",
        ratios.windows(2).all(|w| w[1] > w[0]) && ratios[0] > 1.0,
        json!({"p": 0.5, "n": ns, "ratio": ratios, "statistic": rows.iter().map(|r| r.statistic).collect::<Vec<_>>(), "reference": rows[0].reference}),
    ));

    let samples = ctx.size(40, 100);
    let a = bernstein_constant_search(&[8, 32], &[0.5, 1.0], samples, ctx.seed_for("bernstein", &[0]))?;
    let b = bernstein_constant_search(&[8, 32], &[0.5, 1.0], samples, ctx.seed_for("bernstein", &[1]))?;
    let mut rows = Vec::new();
    let mut ok = true;
    for (x, y) in a.iter().zip(&b) {
        let spread = x.c_random.max(y.c_random) / x.c_random.min(y.c_random);
        ok &= spread <= 2.0;
        rows.push(json!({"n": x.n, "p": x.p, "c_star": x.c_star, "c_random": [x.c_random, y.c_random], "spread": spread}));
    }
    out.push(check("bernstein_stability", ok, json!({"samples": samples, "rows": rows})));

    let rows = helson_probe(&[0.9, 0.95, 0.99], 32, ctx.size(10, 20), ctx.seed_for("helson", &[]), t)?;
    out.push(check(
        "helson_probe",
        true,
        json!({"n": 32, "rows": rows.iter().map(|r| json!({"p": r.p, "best_ratio": r.best_ratio, "scaled": r.scaled})).collect::<Vec<_>>()}),
    ));

    Ok(out)
}
