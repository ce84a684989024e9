use num_complex::Complex64;
use serde_json::json;

use super::{check, CheckReport, Ctx};
use crate::error::Result;
use crate::functionals::{
    dual_ratio_scan, halfplane_functional_check, l_beta_integral, phi_membership_scan, psi_beta_criteria,
};
use crate::numeric::{composite_gauss, gamma};
use crate::random::{random_dirichlet, random_univariate};

pub(super) fn run(ctx: &Ctx) -> Result<Vec<CheckReport>> {
    let t = ctx.table;
    let mut out = Vec::new();

    let n_max = t.limit().min(1 << 22);
    let mut rows = Vec::new();
    let mut ok = true;
    for p in [2.0, 3.0, 4.0] {
        let c = p / 4.0;
        let betas = [c - 0.15, c, c + 0.15];
        let cells = phi_membership_scan(&[p], &betas, n_max, t)?;
        let flags: Vec<bool> = cells.iter().map(|r| r.convergent).collect();
        ok &= !flags[0] && flags[2] && flags.windows(2).all(|w| w[0] <= w[1]);
        rows.push(json!({"p": p, "beta": betas, "convergent": flags, "majorant_ratio": cells.iter().map(|r| r.majorant_ratio).collect::<Vec<_>>()}));
    }
    out.push(check("membership_phase", ok, json!({"n_max": n_max, "rows": rows})));

    let ns = [100, 1000, 10_000, 100_000];
    let s = dual_ratio_scan(1.0, 0.5, &ns, t)?;
    out.push(check(
        "dual_ratio_slope",
        s.slope > 0.0 && (s.slope - s.predicted).abs() <= 0.3 * s.predicted,
        json!({"p": 1.0, "beta": 0.5, "n": ns, "slope": s.slope, "predicted": s.predicted, "finite_sum_slope": s.finite_slope}),
    ));
    let s = dual_ratio_scan(1.0, 1.5, &ns, t)?;
    let ratios: Vec<f64> = s.rows.iter().map(|r| r.ratio).collect();
    out.push(check("dual_ratio_bounded", ratios.windows(2).all(|w| w[1] <= w[0]), json!({"p": 1.0, "beta": 1.5, "n": ns, "ratio": ratios})));
    let s = dual_ratio_scan(2.0, 0.5, &ns, t)?;
    out.push(check(
        "dual_ratio_critical_line",
        true,
        json!({"p": 2.0, "beta": 0.5, "n": ns, "slope": s.slope, "classification": "inconclusive"}),
    ));

    let mut rows = Vec::new();
    let mut ok = true;
    for p in [4.0 / 3.0, 2.0, 4.0] {
        let below = psi_beta_criteria(p, 1.0 / p - 0.25, 16)?;
        let above = psi_beta_criteria(p, 1.0 / p + 0.25, 16)?;
        ok &= !below.convergent && above.convergent;
        rows.push(json!({"p": p, "beta": [below.beta, above.beta], "increment_ratio": [below.increment_ratio, above.increment_ratio]}));
    }
    out.push(check("disc_threshold", ok, json!({"rows": rows})));

    let n_pair = ctx.size(30, 100);
    let mut rng = ctx.rng("pairing_representation", &[]);
    let support: Vec<u64> = (1..=30).collect();
    let mut worst = 0.0f64;
    for _ in 0..n_pair {
        let f = random_dirichlet(&mut rng, &support, 0.5)?;
        for beta in [0.5, 1.0, 2.0] {
            worst = worst.max(halfplane_functional_check(&f, beta)?.difference);
        }
    }
    out.push(check("pairing_representation", worst <= 1e-8, json!({"polynomials": n_pair, "beta": [0.5, 1.0, 2.0], "max_difference": worst})));

    // With u = v^{1/β} the boundary integral becomes ∫_0^1 f(1 - v^{1/β}) dv / Γ(β+1),
    // a polynomial in v when 1/β is an integer.
    let mut rng = ctx.rng("disc_pairing", &[]);
    let (vs, ws) = composite_gauss(0.0, 1.0, 4, 32);
    let mut worst = 0.0f64;
    for _ in 0..n_pair {
        let f = random_univariate(&mut rng, 12);
        for beta in [0.25, 0.5, 1.0] {
            let quad: Complex64 =
                vs.iter().zip(&ws).map(|(&v, &w)| f.eval(Complex64::new(1.0 - v.powf(1.0 / beta), 0.0)) * w).sum();
            let quad = quad / gamma(beta + 1.0);
            let scale = f.coefficients().iter().map(|c| c.norm()).sum::<f64>();
            worst = worst.max((l_beta_integral(&f, beta)? - quad).norm() / scale);
        }
    }
    out.push(check("disc_pairing", worst <= 1e-12, json!({"polynomials": n_pair, "beta": [0.25, 0.5, 1.0], "max_relative_difference": worst})));

    Ok(out)
}
