use std::sync::OnceLock;

use hpdirichlet::{FactorizationTable, WeightKind};
use proptest::prelude::*;

fn table() -> &'static FactorizationTable {
    static T: OnceLock<FactorizationTable> = OnceLock::new();
    T.get_or_init(|| FactorizationTable::new(1_000_000).unwrap())
}

fn wide_table() -> &'static FactorizationTable {
    static T: OnceLock<FactorizationTable> = OnceLock::new();
    T.get_or_init(|| FactorizationTable::new(100_000_000).unwrap())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

const ALPHAS: [f64; 5] = [1.0, 1.5, 2.0, 2.5, 3.0];

proptest! {
    #![proptest_config(ProptestConfig { cases: 2000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn weights_are_multiplicative(m in 1u64..=10_000, n in 1u64..=10_000, ai in 0usize..5) {
        // Strip the shared primes from n to get a coprime pair.
        let mut n = n;
        loop {
            let g = gcd(m, n);
            if g == 1 {
                break;
            }
            n /= g;
        }
        let t = wide_table();
        let alpha = ALPHAS[ai];
        for kind in [WeightKind::D, WeightKind::Phi] {
            let mn = t.weight(m * n, alpha, kind).unwrap();
            let prod = t.weight(m, alpha, kind).unwrap() * t.weight(n, alpha, kind).unwrap();
            prop_assert!(((mn - prod) / prod).abs() <= 1e-12, "{kind:?} {m} {n} {alpha}");
        }
    }

    #[test]
    fn spf_divides_and_is_prime(n in 2u64..=1_000_000) {
        let t = table();
        let p = t.smallest_prime_factor(n).unwrap();
        prop_assert_eq!(n % p, 0);
        prop_assert!(t.is_prime(p));
        let prod: u64 = t.factorize(n).unwrap().iter().map(|&(p, e)| p.pow(e)).product();
        prop_assert_eq!(prod, n);
    }

    #[test]
    fn partial_sums_grow(x in 2.0f64..5000.0, dx in 0.0f64..5000.0, ai in 0usize..5) {
        let t = table();
        for kind in [WeightKind::D, WeightKind::Phi, WeightKind::MuD] {
            let s = t.weight_partial_sums(&[x, x + dx], ALPHAS[ai], kind).unwrap();
            prop_assert!(s[0] > 0.0 && s[1] >= s[0]);
        }
    }
}

#[test]
fn square_free_identity_is_exact() {
    let t = table();
    for &alpha in &ALPHAS {
        for n in 1..=100_000u64 {
            if !t.is_square_free(n).unwrap() {
                continue;
            }
            let expected = alpha.powi(t.big_omega(n).unwrap() as i32);
            assert_eq!(t.phi_alpha(n, alpha).unwrap(), expected, "n = {n}, alpha = {alpha}");
            assert_eq!(t.weight(n, alpha, WeightKind::MuD).unwrap(), expected, "n = {n}, alpha = {alpha}");
        }
    }
}

#[test]
fn integer_alpha_agreement_is_exact() {
    let t = table();
    for k in 1..=4 {
        let alpha = k as f64;
        for n in 1..=100_000u64 {
            let d = t.d_alpha(n, alpha).unwrap();
            assert_eq!(t.phi_alpha(n, alpha).unwrap(), d, "n = {n}, k = {k}");
            assert!(d >= 1.0 && d.fract() == 0.0);
        }
    }
}

#[test]
fn primes_match_trial_division() {
    let t = table();
    let naive: Vec<u64> = (2..=10_000u64)
        .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect();
    assert_eq!(&t.primes()[..naive.len()], &naive[..]);
    assert!(t.primes()[naive.len()] > 10_000);
}
