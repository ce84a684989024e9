use std::sync::OnceLock;

use hpdirichlet::series::{bohr_lift, bohr_unlift, euler_product_power, parse_polynomial_json, parse_polynomial_text, LocalFactor};
use hpdirichlet::{DirichletPolynomial, FactorizationTable};
use num_complex::Complex64;
use proptest::prelude::*;

fn table() -> &'static FactorizationTable {
    static T: OnceLock<FactorizationTable> = OnceLock::new();
    T.get_or_init(|| FactorizationTable::new(100_000).unwrap())
}

fn trial_division_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = 2u64;
    while out.len() < count {
        if (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0) {
            out.push(n);
        }
        n += 1;
    }
    out
}

fn poly(max_index: u64, max_terms: usize) -> impl Strategy<Value = DirichletPolynomial> {
    prop::collection::btree_map(1..=max_index, (-3.0f64..3.0, -3.0f64..3.0), 0..=max_terms).prop_map(|m| {
        DirichletPolynomial::from_pairs(m.into_iter().map(|(n, (re, im))| (n, Complex64::new(re, im)))).unwrap()
    })
}

/// Dense Dirichlet convolution.
fn convolve(f: &DirichletPolynomial, g: &DirichletPolynomial) -> Vec<Complex64> {
    let len = (f.length() * g.length()) as usize;
    let mut out = vec![Complex64::new(0.0, 0.0); len + 1];
    for m in 1..=f.length() {
        for n in 1..=g.length() {
            out[(m * n) as usize] += f.coefficient(m) * g.coefficient(n);
        }
    }
    out
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn product_matches_dense_convolution(f in poly(60, 12), g in poly(60, 12)) {
        let fg = f.multiply(&g).unwrap();
        let dense = convolve(&f, &g);
        for (n, c) in dense.iter().enumerate().skip(1) {
            prop_assert!(close(fg.coefficient(n as u64), *c, 1e-13));
        }
    }

    #[test]
    fn lift_evaluates_like_the_series(f in poly(200, 15), sigma in 0.6f64..3.0, t in -50.0f64..50.0) {
        let lifted = bohr_lift(&f, table()).unwrap();
        let s = Complex64::new(sigma, t);
        let primes = trial_division_primes(lifted.dimension());
        let z: Vec<Complex64> = primes.iter().map(|&q| (-s * (q as f64).ln()).exp()).collect();
        let direct: Complex64 = (1..=f.length()).map(|n| f.coefficient(n) * Complex64::new(n as f64, 0.0).powc(-s)).sum();
        prop_assert!(close(lifted.evaluate(&z).unwrap(), direct, 1e-11));
        prop_assert!(close(f.evaluate_halfplane(s), direct, 1e-11));
    }

    #[test]
    fn lift_is_a_ring_map(f in poly(100, 8), g in poly(100, 8)) {
        let t = table();
        let lhs = bohr_lift(&f.multiply(&g).unwrap(), t).unwrap();
        let rhs = bohr_lift(&f, t).unwrap().multiply(&bohr_lift(&g, t).unwrap());
        for (kappa, c) in rhs.iter() {
            prop_assert!(close(lhs.coefficient(kappa), c, 1e-13));
        }
        prop_assert_eq!(lhs.num_terms(), rhs.num_terms());
        prop_assert_eq!(bohr_unlift(&bohr_lift(&f, t).unwrap(), t).unwrap(), f);
    }

    #[test]
    fn text_and_json_round_trip(f in poly(10_000, 20)) {
        prop_assert_eq!(parse_polynomial_text(&f.to_text()).unwrap(), f.clone());
        prop_assert_eq!(parse_polynomial_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn integer_euler_power_is_repeated_product(c2 in -1.0f64..1.0, c3 in -1.0f64..1.0, k in 1u32..=4) {
        let one = Complex64::new(1.0, 0.0);
        let factors = [
            LocalFactor { prime: 2, series: vec![one, Complex64::new(c2, 0.0)] },
            LocalFactor { prime: 3, series: vec![one, Complex64::new(c3, 0.0)] },
        ];
        let power = euler_product_power(&factors, k as f64, Some(k as usize)).unwrap();
        let base = DirichletPolynomial::from_dense_real(&[1.0, c2, c3, 0.0, 0.0, c2 * c3]);
        let mut expected = DirichletPolynomial::constant(one);
        for _ in 0..k {
            expected = expected.multiply(&base).unwrap();
        }
        for (n, c) in expected.iter() {
            prop_assert!(close(power.coefficient(n), c, 1e-13));
        }
        for (n, c) in power.iter() {
            prop_assert!(close(expected.coefficient(n), c, 1e-13));
        }
    }
}
