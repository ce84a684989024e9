use std::f64::consts::PI;
use std::sync::OnceLock;

use hpdirichlet::norms::{norm_dirichlet, norm_even, norm_l2, norm_qmc, norm_vertical, QuadratureSpec};
use hpdirichlet::series::bohr_lift;
use hpdirichlet::{DirichletPolynomial, FactorizationTable, MultiIndex, MultivariatePolynomial};
use num_complex::Complex64;
use proptest::prelude::*;

fn table() -> &'static FactorizationTable {
    static T: OnceLock<FactorizationTable> = OnceLock::new();
    T.get_or_init(|| FactorizationTable::new(100_000).unwrap())
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Polynomials in `2^{-s}, 3^{-s}, 5^{-s}` with small exponents.
fn smooth_poly() -> impl Strategy<Value = DirichletPolynomial> {
    let index = (0u32..3, 0u32..3, 0u32..2).prop_map(|(a, b, e)| 2u64.pow(a) * 3u64.pow(b) * 5u64.pow(e));
    prop::collection::btree_map(index, (-2.0f64..2.0, -2.0f64..2.0), 1..6).prop_map(|m| {
        DirichletPolynomial::from_pairs(m.into_iter().map(|(n, (re, im))| (n, Complex64::new(re, im)))).unwrap()
    })
}

/// `(Σ_n |Σ_{ab=n} a_a a_b|^2)^{1/4}`, written out densely.
fn l4_by_convolution(f: &DirichletPolynomial) -> f64 {
    let len = f.length();
    let mut sq = vec![Complex64::new(0.0, 0.0); (len * len + 1) as usize];
    for a in 1..=len {
        for b in 1..=len {
            sq[(a * b) as usize] += f.coefficient(a) * f.coefficient(b);
        }
    }
    sq.iter().map(|z| z.norm_sqr()).sum::<f64>().powf(0.25)
}

/// Plain Riemann sum of `|F|^p` over a `k^d` grid, evaluated term by term.
fn brute_force_grid(f: &MultivariatePolynomial, p: f64, k: usize) -> f64 {
    let d = f.dimension();
    let total = k.pow(d as u32);
    let mut acc = 0.0;
    for idx in 0..total {
        let mut rest = idx;
        let theta: Vec<f64> = (0..d)
            .map(|_| {
                let j = rest % k;
                rest /= k;
                2.0 * PI * j as f64 / k as f64
            })
            .collect();
        acc += f.evaluate_torus(&theta).unwrap().norm().powf(p);
    }
    (acc / total as f64).powf(1.0 / p)
}

#[test]
fn one_plus_z_has_l1_norm_four_over_pi() {
    let f = MultivariatePolynomial::from_terms([(MultiIndex::new(vec![]), c(1.0)), (MultiIndex::new(vec![1]), c(1.0))]);
    let est = norm_qmc(&f, 1.0, &QuadratureSpec::tensor_grid()).unwrap();
    assert!(est.contains(4.0 / PI, 0.0), "{est:?}");
    let fine = norm_qmc(&f, 1.0, &QuadratureSpec::tensor_grid_with(4096)).unwrap();
    assert!((fine.value - 4.0 / PI).abs() < 1e-6 && fine.contains(4.0 / PI, 0.0), "{fine:?}");
}

#[test]
fn two_term_vertical_average() {
    let f = DirichletPolynomial::from_dense_real(&[1.0, 1.0]);
    let est = norm_vertical(&f, 2.0, 1e4, None).unwrap();
    assert!((est.value.powi(2) - 2.0).abs() < 0.01);
    assert_eq!(est.error, 0.0);
}

#[test]
fn random_vertical_average_at_long_range() {
    let f = DirichletPolynomial::from_dense_real(&[0.3, -1.0, 0.5, 0.0, 2.0, 0.7]);
    let est = norm_vertical(&f, 2.0, 1e5, None).unwrap();
    let l2 = norm_l2(&f).value;
    assert!((est.value.powi(2) / l2.powi(2) - 1.0).abs() < 0.02);
}

#[test]
fn constants_have_their_modulus_as_norm() {
    let f = DirichletPolynomial::constant(Complex64::new(3.0, -4.0));
    for p in [0.5, 1.0, 3.0] {
        assert!((norm_dirichlet(&f, p, table(), 0).unwrap().value - 5.0).abs() < 1e-12);
    }
    for p in [2.0, 4.0, 6.0] {
        assert!((norm_even(&f, p).unwrap().value - 5.0).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn fourth_power_norm_matches_convolution(f in smooth_poly()) {
        let exact = norm_even(&f, 4.0).unwrap().value;
        let oracle = l4_by_convolution(&f);
        prop_assert!((exact - oracle).abs() <= 1e-12 * oracle);
    }

    #[test]
    fn tensor_grid_matches_brute_force(f in smooth_poly(), p in prop::sample::select(vec![0.5, 1.0, 2.0, 3.0])) {
        let lifted = bohr_lift(&f, table()).unwrap();
        let k = 64;
        let grid = norm_qmc(&lifted, p, &QuadratureSpec::tensor_grid_with(k)).unwrap();
        let brute = brute_force_grid(&lifted, p, k);
        prop_assert!((grid.value - brute).abs() <= 1e-10 * (1.0 + brute), "{} vs {}", grid.value, brute);
    }

    #[test]
    fn norms_increase_with_the_exponent(f in smooth_poly()) {
        let t = table();
        let vals: Vec<_> = [0.5, 1.0, 2.0, 4.0].iter().map(|&p| norm_dirichlet(&f, p, t, 3).unwrap()).collect();
        for w in vals.windows(2) {
            prop_assert!(w[0].lower() <= w[1].upper() + 1e-12);
        }
    }

    #[test]
    fn norms_are_homogeneous(f in smooth_poly(), re in -3.0f64..3.0, im in -3.0f64..3.0, p in prop::sample::select(vec![0.5, 1.0, 2.0, 4.0])) {
        let lambda = Complex64::new(re, im);
        prop_assume!(lambda.norm() > 1e-3);
        let t = table();
        let a = norm_dirichlet(&f.scale(lambda), p, t, 5).unwrap().value;
        let b = norm_dirichlet(&f, p, t, 5).unwrap().value;
        prop_assert!((a - lambda.norm() * b).abs() <= 1e-11 * a.max(1e-300));
    }

    #[test]
    fn quasi_triangle_inequality(f in smooth_poly(), g in smooth_poly(), p in prop::sample::select(vec![0.5, 1.0])) {
        let t = table();
        let sum = norm_dirichlet(&f.add(&g), p, t, 9).unwrap();
        let a = norm_dirichlet(&f, p, t, 9).unwrap();
        let b = norm_dirichlet(&g, p, t, 9).unwrap();
        // ‖f+g‖_p^p ≤ ‖f‖_p^p + ‖g‖_p^p for p ≤ 1.
        prop_assert!(sum.raw_mean - sum.raw_error <= a.raw_mean + a.raw_error + b.raw_mean + b.raw_error + 1e-12);
    }
}
