use std::sync::OnceLock;

use hpdirichlet::operators::{
    bernstein_threshold, gn_certificate, lower_bound_big_n, partial_sum, primorial_index, weissler_check, GnCase,
};
use hpdirichlet::{DirichletPolynomial, FactorizationTable, UnivariatePolynomial};
use num_complex::Complex64;
use proptest::prelude::*;

fn table() -> &'static FactorizationTable {
    static T: OnceLock<FactorizationTable> = OnceLock::new();
    T.get_or_init(|| FactorizationTable::new(100_000).unwrap())
}

fn poly(max_index: u64, max_terms: usize) -> impl Strategy<Value = DirichletPolynomial> {
    prop::collection::btree_map(1..=max_index, (-3.0f64..3.0, -3.0f64..3.0), 0..=max_terms).prop_map(|m| {
        DirichletPolynomial::from_pairs(m.into_iter().map(|(n, (re, im))| (n, Complex64::new(re, im)))).unwrap()
    })
}

/// Largest primorial `P` with `P(P+1) ≤ N`, by repeated trial multiplication.
fn brute_primorial(n: u64) -> u64 {
    let mut best = 0;
    let mut acc = 1u64;
    let mut q = 2u64;
    loop {
        if (2..q).all(|d| q % d != 0) {
            acc *= q;
            if acc * (acc + 1) > n {
                return best;
            }
            best = acc;
        }
        q += 1;
    }
}

#[test]
fn truncation_bound_for_two_primes() {
    let c = lower_bound_big_n(2, 0.5, None, table(), 0).unwrap();
    assert_eq!(c.m, 6);
    assert!((c.bound - 0.25 * 1.6875).abs() < 1e-12);
    assert!(c.holds && c.max + c.max_error >= 0.25 * 1.6875);
    assert!((c.norm_fm.value - 1.0).abs() < 1e-9 + c.norm_fm.error);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 512, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn shifted_truncation_identity(n in 6u64..=100_000, top in any::<bool>()) {
        let case = if top { GnCase::KeepTop } else { GnCase::DropTop };
        let cert = gn_certificate(n, case).unwrap();
        prop_assert!(cert.holds());
        prop_assert_eq!(cert.n_j, brute_primorial(n));
        prop_assert_eq!(primorial_index(n).unwrap().1, cert.n_j);
        // All-ones polynomial on 1..=n_J: the shift by x exposes exactly 1..=kept.
        let f = DirichletPolynomial::from_dense_real(&vec![1.0; cert.n_j as usize]);
        let lhs = partial_sum(&f.shift(cert.x).unwrap(), n);
        let rhs = partial_sum(&f, cert.kept).shift(cert.x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncation_is_linear_and_idempotent(f in poly(300, 20), g in poly(300, 20), n in 1u64..400, re in -2.0f64..2.0) {
        let lambda = Complex64::new(re, 0.5);
        let lhs = partial_sum(&f.scale(lambda).add(&g), n);
        let rhs = partial_sum(&f, n).scale(lambda).add(&partial_sum(&g, n));
        for m in 1..=n {
            prop_assert!((lhs.coefficient(m) - rhs.coefficient(m)).norm() < 1e-12);
        }
        prop_assert_eq!(partial_sum(&partial_sum(&f, n), n), partial_sum(&f, n));
        prop_assert!(partial_sum(&f, n).length() <= n);
    }

    #[test]
    fn dilated_binomial_closed_form(r in 0.0f64..=1.0) {
        let f = UnivariatePolynomial::from_real(&[1.0, 1.0]);
        let c = weissler_check(&f, 2.0, 4.0, r).unwrap();
        let closed = (1.0 + 4.0 * r * r + r.powi(4)).powf(0.25);
        prop_assert!((c.lhs.value - closed).abs() < 1e-12);
        prop_assert!((c.rhs.value - 2f64.sqrt()).abs() < 1e-13);
        if r <= 0.5f64.sqrt() {
            prop_assert!(c.holds);
        }
    }

    #[test]
    fn monomial_bernstein_threshold(n in 1usize..40, p in 0.3f64..3.0) {
        let c = bernstein_threshold(&UnivariatePolynomial::monomial(n), n, p).unwrap();
        let exact = (n as f64 * (1.0 - 2f64.powf(-1.0 / (n as f64 * p)))).powf(-p);
        prop_assert!((c - exact).abs() <= 1e-8 * exact);
    }
}
