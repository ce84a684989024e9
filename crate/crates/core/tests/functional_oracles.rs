use std::sync::OnceLock;

use hpdirichlet::functionals::{dual_test_function, euler_pairing, halfplane_functional_check, l_beta_integral, pair_h2, psi_beta_criteria};
use hpdirichlet::numeric::gamma;
use hpdirichlet::{DirichletPolynomial, FactorizationTable, UnivariatePolynomial};
use num_complex::Complex64;
use proptest::prelude::*;

fn table() -> &'static FactorizationTable {
    static T: OnceLock<FactorizationTable> = OnceLock::new();
    T.get_or_init(|| FactorizationTable::new(100_000).unwrap())
}

/// `1 + Σ_k C(α+k-1, k) 2^{-k} (k log 2)^{-β}`.
fn single_prime_pairing(alpha: f64, beta: f64) -> f64 {
    let mut binom = 1.0;
    let mut sum = 1.0;
    for k in 1..400 {
        binom *= (alpha + k as f64 - 1.0) / k as f64;
        sum += binom * 0.5f64.powi(k) * (k as f64 * 2f64.ln()).powf(-beta);
    }
    sum
}

#[test]
fn single_prime_pairing_matches_series() {
    for (p, beta) in [(1.0, 0.5), (2.0, 1.0), (0.5, 2.0)] {
        let (v, err) = euler_pairing(p, beta, 2, table()).unwrap();
        let oracle = single_prime_pairing(2.0 / p, beta);
        assert!((v - oracle).abs() <= 1e-9 * oracle + err, "p = {p}, β = {beta}: {v} vs {oracle}");
    }
}

#[test]
fn test_function_coefficients_by_exponents() {
    // 2/p = 3, primes up to 7, local degree 3.
    let f = dual_test_function(2.0 / 3.0, 7, 3, table()).unwrap();
    let d3 = |e: u32| ((e + 1) * (e + 2) / 2) as f64;
    for e in 0..4u32.pow(4) {
        let exps = [e % 4, e / 4 % 4, e / 16 % 4, e / 64];
        let n: u64 = [2u64, 3, 5, 7].iter().zip(exps).map(|(q, k)| q.pow(k)).product();
        // d_3(q^k) = C(k+2, 2).
        let expected: f64 = exps.iter().map(|&k| d3(k)).product::<f64>() / (n as f64).sqrt();
        assert!((f.coefficient(n).re - expected).abs() < 1e-13 * expected.max(1.0), "n = {n}");
    }
    assert_eq!(f.num_terms(), 256);
}

#[test]
fn disc_integral_examples() {
    for beta in [0.25, 0.5, 1.0, 2.5] {
        let v = l_beta_integral(&UnivariatePolynomial::from_real(&[1.0]), beta).unwrap();
        assert!((v.re - 1.0 / gamma(beta + 1.0)).abs() < 1e-12);
    }
    for j in 0..6 {
        let v = l_beta_integral(&UnivariatePolynomial::monomial(j), 1.0).unwrap();
        assert!((v.re - 1.0 / (j as f64 + 1.0)).abs() < 1e-12);
    }
}

#[test]
fn disc_threshold_ordering() {
    for p in [4.0 / 3.0, 2.0, 4.0] {
        let below = psi_beta_criteria(p, 1.0 / p - 0.25, 16).unwrap();
        let above = psi_beta_criteria(p, 1.0 / p + 0.25, 16).unwrap();
        assert!(!below.convergent && above.convergent, "p = {p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pairing_equals_its_integral_form(
        terms in prop::collection::btree_map(1u64..=40, (-2.0f64..2.0, -2.0f64..2.0), 1..8),
        beta in prop::sample::select(vec![0.5, 1.0, 1.5, 2.0]),
    ) {
        let f = DirichletPolynomial::from_pairs(terms.into_iter().map(|(n, (re, im))| (n, Complex64::new(re, im)))).unwrap();
        let check = halfplane_functional_check(&f, beta).unwrap();
        let direct = pair_h2(&f, beta).unwrap();
        prop_assert!((check.pairing - direct).norm() < 1e-13);
        prop_assert!(check.difference <= 1e-8 * (1.0 + direct.norm()), "{check:?}");
    }
}
