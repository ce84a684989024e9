use num_complex::Complex64;
use rand::Rng;
use serde_json::json;

use super::{check, rel_diff, CheckReport, Ctx};
use crate::error::Result;
use crate::norms::{
    basic_estimate_ratio, norm_bergman, norm_dirichlet, norm_even, norm_l2, norm_qmc, norm_vertical, BergmanSpec,
    NormEstimate, QuadratureSpec, AUTO_LATTICE_POINTS,
};
use crate::random::{complex_gaussian, random_dirichlet, random_univariate, smooth_support};
use crate::series::{bohr_lift, bohr_unlift, zeta_upper_bound, DirichletPolynomial, MultivariatePolynomial};

fn max_coefficient_gap(a: &MultivariatePolynomial, b: &MultivariatePolynomial) -> f64 {
    let d = a.add(&b.scale(Complex64::new(-1.0, 0.0)));
    d.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max)
}

/// `‖f‖ ≤ ‖g‖` once both error bars are granted.
fn le(a: &NormEstimate, b: &NormEstimate) -> bool {
    a.value - a.error <= b.value + b.error + 1e-12 * b.value
}

pub(super) fn run(ctx: &Ctx) -> Result<Vec<CheckReport>> {
    let t = ctx.table;
    let support = smooth_support(t, 30, 3)?;
    let mut out = Vec::new();

    // Engine cross-validation.
    let polys = 50;
    let mut rng = ctx.rng("engine_cross_validation", &[]);
    let fs: Vec<DirichletPolynomial> = (0..polys).map(|_| random_dirichlet(&mut rng, &support, 0.5)).collect::<Result<_>>()?;
    let mut inside = [0usize; 2];
    let mut tensor_gap = 0.0f64;
    for (i, f) in fs.iter().enumerate() {
        let lifted = bohr_lift(f, t)?;
        for (slot, p) in [2.0, 4.0].into_iter().enumerate() {
            let exact = if p == 2.0 { norm_l2(f) } else { norm_even(f, p)? };
            let spec = QuadratureSpec::lattice(AUTO_LATTICE_POINTS, 16, ctx.seed_for("engine_cross_validation", &[i as u64, slot as u64]));
            if norm_qmc(&lifted, p, &spec)?.contains(exact.value, 0.0) {
                inside[slot] += 1;
            }
        }
        let grid = norm_qmc(&lifted, 2.0, &QuadratureSpec::tensor_grid())?;
        tensor_gap = tensor_gap.max((grid.value - norm_l2(f).value).abs());
    }
    let need = (0.95 * polys as f64).ceil() as usize;
    out.push(check(
        "engine_cross_validation",
        inside.iter().all(|&c| c >= need) && tensor_gap <= 1e-10,
        json!({"polynomials": polys, "lattice_inside_p2": inside[0], "lattice_inside_p4": inside[1], "required": need, "tensor_p2_max_gap": tensor_gap}),
    ));

    // Vertical averages approach the l2 norm.
    let ts = [1e2, 1e3, 1e4];
    let mut rng = ctx.rng("ergodic_identity", &[]);
    let mut errors = vec![Vec::new(); ts.len()];
    for _ in 0..10 {
        let f = random_dirichlet(&mut rng, &support, 0.5)?;
        let l2sq = norm_l2(&f).value.powi(2);
        for (k, &tm) in ts.iter().enumerate() {
            let v = norm_vertical(&f, 2.0, tm, None)?.value;
            errors[k].push((v * v - l2sq).abs() / l2sq);
        }
    }
    let mean: Vec<f64> = errors.iter().map(|e| e.iter().sum::<f64>() / e.len() as f64).collect();
    let max: Vec<f64> = errors.iter().map(|e| e.iter().cloned().fold(0.0, f64::max)).collect();
    out.push(check(
        "ergodic_identity",
        mean.windows(2).all(|w| w[1] < w[0]) && max.windows(2).all(|w| w[1] < w[0]) && max[2] < 0.02,
        json!({"t": ts, "mean_relative_error": mean, "max_relative_error": max}),
    ));

    // Truncation to fewer variables never increases the norm.
    let wide = smooth_support(t, 60, 4)?;
    let n_abs = ctx.size(20, 100);
    let mut rng = ctx.rng("abschnitt_monotonicity", &[]);
    let mut violations = 0;
    for _ in 0..n_abs {
        let lifted = bohr_lift(&random_dirichlet(&mut rng, &wide, 0.5)?, t)?;
        for p in [0.5, 1.0, 3.0] {
            let norms = (0..=4)
                .map(|m| norm_qmc(&lifted.abschnitt(m), p, &QuadratureSpec::tensor_grid()))
                .collect::<Result<Vec<_>>>()?;
            violations += norms.windows(2).filter(|w| !le(&w[0], &w[1])).count();
        }
    }
    out.push(check("abschnitt_monotonicity", violations == 0, json!({"polynomials": n_abs, "violations": violations})));

    // |f(s)|^2 ≤ ζ(2σ) ‖f‖_2^2.
    let n_pt = ctx.size(30, 100);
    let mut rng = ctx.rng("point_bound", &[]);
    let mut worst = 0.0f64;
    for _ in 0..n_pt {
        let f = random_dirichlet(&mut rng, &(1..=30).collect::<Vec<_>>(), 1.0)?;
        let f = f.scale(Complex64::new(1.0 / norm_l2(&f).value, 0.0));
        for _ in 0..10 {
            let sigma = rng.random_range(0.55..2.0);
            let s = Complex64::new(sigma, rng.random_range(-50.0..50.0));
            let lhs = f.evaluate_halfplane(s).norm_sqr();
            worst = worst.max(lhs / zeta_upper_bound(2.0 * sigma, 10_000)?);
        }
    }
    out.push(check("point_bound", worst <= 1.0 + 1e-12, json!({"polynomials": n_pt, "max_ratio": worst})));

    // ‖f‖_p is non-decreasing in p.
    let n_mono = ctx.size(30, 100);
    let ps = [0.5, 1.0, 2.0, 4.0];
    let mut rng = ctx.rng("exponent_monotonicity", &[]);
    let mut violations = 0;
    for i in 0..n_mono {
        let f = random_dirichlet(&mut rng, &support, 0.5)?;
        let norms = ps
            .iter()
            .map(|&p| norm_dirichlet(&f, p, t, ctx.seed_for("exponent_monotonicity", &[i as u64])))
            .collect::<Result<Vec<_>>>()?;
        violations += norms.windows(2).filter(|w| !le(&w[0], &w[1])).count();
    }
    out.push(check("exponent_monotonicity", violations == 0, json!({"polynomials": n_mono, "p": ps, "violations": violations})));

    // ‖f+g‖_p^p ≤ ‖f‖_p^p + ‖g‖_p^p for p ≤ 1.
    let n_tri = ctx.size(30, 100);
    let mut rng = ctx.rng("quasi_triangle", &[]);
    let mut violations = 0;
    let mut worst = 0.0f64;
    for i in 0..n_tri {
        let f = random_dirichlet(&mut rng, &support, 0.5)?;
        let g = random_dirichlet(&mut rng, &support, 0.5)?;
        for p in [0.5, 1.0] {
            let seed = ctx.seed_for("quasi_triangle", &[i as u64]);
            let s = norm_dirichlet(&f.add(&g), p, t, seed)?;
            let a = norm_dirichlet(&f, p, t, seed)?;
            let b = norm_dirichlet(&g, p, t, seed)?;
            let rhs = a.raw_mean + b.raw_mean;
            worst = worst.max(s.raw_mean / rhs);
            if s.raw_mean - s.raw_error > rhs + a.raw_error + b.raw_error + 1e-12 * rhs {
                violations += 1;
            }
        }
    }
    out.push(check("quasi_triangle", violations == 0, json!({"pairs": n_tri, "p": [0.5, 1.0], "violations": violations, "max_ratio": worst})));

    // ‖cf‖ = |c| ‖f‖.
    let n_hom = ctx.size(20, 100);
    let mut rng = ctx.rng("homogeneity", &[]);
    let mut worst = 0.0f64;
    for i in 0..n_hom {
        let f = random_dirichlet(&mut rng, &support, 0.5)?;
        let c = complex_gaussian(&mut rng);
        for p in [1.0, 2.0, 4.0] {
            let seed = ctx.seed_for("homogeneity", &[i as u64]);
            let a = norm_dirichlet(&f.scale(c), p, t, seed)?.value;
            let b = c.norm() * norm_dirichlet(&f, p, t, seed)?.value;
            worst = worst.max(rel_diff(a, b));
        }
    }
    out.push(check("homogeneity", worst <= 1e-12, json!({"polynomials": n_hom, "max_relative_difference": worst})));

    // The lift is a ring isomorphism onto its image.
    let n_ring = ctx.size(50, 200);
    let small = smooth_support(t, 40, 5)?;
    let mut rng = ctx.rng("lift_ring_isomorphism", &[]);
    let mut worst = 0.0f64;
    let mut roundtrip_failures = 0;
    for _ in 0..n_ring {
        let f = random_dirichlet(&mut rng, &small, 0.3)?;
        let g = random_dirichlet(&mut rng, &small, 0.3)?;
        let lf = bohr_lift(&f, t)?;
        worst = worst.max(max_coefficient_gap(&bohr_lift(&f.multiply(&g)?, t)?, &lf.multiply(&bohr_lift(&g, t)?)));
        if bohr_unlift(&lf, t)? != f {
            roundtrip_failures += 1;
        }
    }
    out.push(check(
        "lift_ring_isomorphism",
        worst <= 1e-12 && roundtrip_failures == 0,
        json!({"pairs": n_ring, "max_coefficient_gap": worst, "roundtrip_failures": roundtrip_failures}),
    ));

    // The basic estimate ratio has a stable supremum across batches.
    let n_basic = ctx.size(100, 500);
    let mut rows = Vec::new();
    let mut stable = true;
    for p in [0.25, 0.5, 0.75] {
        let mut maxima = [0.0f64; 2];
        let p: f64 = p;
        for (b, m) in maxima.iter_mut().enumerate() {
            let mut rng = ctx.rng("basic_estimate", &[p.to_bits(), b as u64]);
            for _ in 0..n_basic {
                if let Some(r) = basic_estimate_ratio(&random_univariate(&mut rng, 8), p, 1024)? {
                    *m = m.max(r);
                }
            }
        }
        let spread = maxima[0].max(maxima[1]) / maxima[0].min(maxima[1]);
        stable &= spread <= 2.0;
        rows.push(json!({"p": p, "batch_maxima": maxima, "spread": spread}));
    }
    out.push(check("basic_estimate_stability", stable, json!({"polynomials_per_batch": n_basic, "rows": rows})));

    // Tensor grids are exact for even p.
    let n_even = ctx.size(20, 50);
    let mut rng = ctx.rng("method_agreement", &[]);
    let mut violations = 0;
    let mut worst = 0.0f64;
    for _ in 0..n_even {
        let f = random_dirichlet(&mut rng, &wide, 0.5)?;
        let lifted = bohr_lift(&f, t)?;
        for p in [2.0, 4.0, 6.0] {
            let exact = norm_even(&f, p)?;
            let grid = norm_qmc(&lifted, p, &QuadratureSpec::tensor_grid())?;
            worst = worst.max(rel_diff(grid.value, exact.value));
            violations += usize::from(!grid.contains(exact.value, 1e-12 * exact.value));
        }
    }
    out.push(check("method_agreement_even", violations == 0, json!({"polynomials": n_even, "p": [2, 4, 6], "violations": violations, "max_relative_difference": worst})));

    // The Bergman weight is a probability measure; truncation loses mass.
    let one = DirichletPolynomial::constant(Complex64::new(1.0, 0.0));
    let mass = norm_bergman(&one, 2.0, &BergmanSpec::default())?.value.powi(2);
    out.push(check("bergman_mass", mass > 0.9 && mass <= 1.0 + 1e-12, json!({"alpha": 2.0, "mass": mass})));

    // ζ(1/2 + ε + s)^2 truncated at N: the area norm at α = 2 grows as ε decreases.
    let n_zeta = ctx.size(400, 2000) as u64;
    let eps = [0.4, 0.2, 0.1];
    let mut values = Vec::new();
    for &e in &eps {
        let pairs = (1..=n_zeta).map(|n| Ok((n, Complex64::new(t.d_alpha(n, 2.0)? * (n as f64).powf(-0.5 - e), 0.0))));
        let f = DirichletPolynomial::from_pairs(pairs.collect::<Result<Vec<_>>>()?)?;
        values.push(norm_bergman(&f, 2.0, &BergmanSpec::default())?.value.powi(2));
    }
    let lx: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let ly: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let (slope, _) = crate::numeric::linear_fit(&lx, &ly).unwrap_or((f64::NAN, 0.0));
    out.push(check(
        "area_norm_growth",
        values.windows(2).all(|w| w[1] > w[0]) && slope < 0.0,
        json!({"alpha": 2.0, "n": n_zeta, "epsilon": eps, "squared_norm": values, "log_log_slope": slope}),
    ));

    Ok(out)
}
