use std::sync::OnceLock;

use hpdirichlet::extremals::{c1_closed_form, c_multiplicative, ck_oracle, ck_upper_lemma, extremal_c1, C1Variant, OracleSettings};
use hpdirichlet::norms::norm_disc;
use hpdirichlet::FactorizationTable;
use proptest::prelude::*;

fn table() -> &'static FactorizationTable {
    static T: OnceLock<FactorizationTable> = OnceLock::new();
    T.get_or_init(|| FactorizationTable::new(100_000).unwrap())
}

/// `z`-coefficient of `(√(1-p/2) + z√(p/2))^{2/p}`, whose `H^p` quasi-norm is 1.
fn binomial_coefficient_ratio(p: f64) -> f64 {
    (2.0 / p) * (p / 2.0).sqrt() * (1.0 - p / 2.0).powf(1.0 / p - 0.5)
}

#[test]
fn first_coefficient_values() {
    assert_eq!(c1_closed_form(1.0).unwrap(), 1.0);
    assert_eq!(c1_closed_form(3.0).unwrap(), 1.0);
    assert!((c1_closed_form(0.5).unwrap() - 2.0 * 0.75f64.powf(1.5)).abs() < 1e-15);
    assert!(c1_closed_form(0.0).is_err());
}

#[test]
fn small_exponent_asymptotics() {
    let limit = (2.0 / std::f64::consts::E).sqrt();
    let at = |p: f64| p.sqrt() * c1_closed_form(p).unwrap();
    assert!((at(0.01) / limit - 1.0).abs() < 0.05);
    assert!((at(0.01) - limit).abs() < (at(0.1) - limit).abs());
}

#[test]
fn extremal_has_unit_norm_when_two_over_p_is_an_integer() {
    for p in [0.25, 0.5, 2.0 / 3.0, 1.0] {
        let e = extremal_c1(p, C1Variant::C, None).unwrap();
        assert!(e.exact);
        let norm = norm_disc(&e.polynomial, p, None).unwrap();
        assert!((norm.value - 1.0).abs() < 1e-12, "p = {p}: {}", norm.value);
        assert!((e.polynomial.coefficient(1).re - c1_closed_form(p).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn oracle_for_second_coefficient_sits_under_the_lemma_bound() {
    let r = ck_oracle(2, 0.5, &OracleSettings::new(8, 8, 11)).unwrap();
    let upper = ck_upper_lemma(2, 0.5).unwrap().value;
    assert!(r.value <= upper + 1e-9);
    assert!(r.value >= 1.0);
    assert!((ck_oracle(0, 0.7, &OracleSettings::new(3, 2, 0)).unwrap().value - 1.0).abs() < 1e-12);
}

#[test]
fn multiplicative_constant_of_six_is_a_square() {
    let b = c_multiplicative(6, 0.5, table()).unwrap();
    let c1 = 2.0 * 0.75f64.powf(1.5);
    assert!((b.lower - c1 * c1).abs() < 1e-12 && (b.upper - c1 * c1).abs() < 1e-12);
    let one = c_multiplicative(1, 0.5, table()).unwrap();
    assert_eq!((one.lower, one.upper), (1.0, 1.0));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn closed_form_matches_binomial_extremal(p in 0.02f64..0.999) {
        let c = c1_closed_form(p).unwrap();
        let b = binomial_coefficient_ratio(p);
        prop_assert!((c - b).abs() <= 1e-12 * b);
    }

    #[test]
    fn lemma_bound_under_its_endpoints(k in 1u32..=12, p in 0.05f64..0.95) {
        let b = ck_upper_lemma(k, p).unwrap();
        prop_assert!((b.at_p - p.powf(-(k as f64) / 2.0)).abs() <= 1e-12 * b.at_p);
        prop_assert!(b.value <= b.at_p * (1.0 + 1e-12));
        prop_assert!(b.value <= b.at_balanced * (1.0 + 1e-12));
        prop_assert!(b.argmin >= p && b.argmin < 1.0);
    }

    #[test]
    fn lemma_bound_dominates_first_coefficient(p in 0.05f64..0.95) {
        let upper = ck_upper_lemma(1, p).unwrap().value;
        prop_assert!(upper >= c1_closed_form(p).unwrap() * (1.0 - 1e-12));
    }
}
