//! The partial sum operator `S_N f = Σ_{n ≤ N} a_n n^{-s}` and experiments
//! bounding its norm on `H^p` from below, plus two disc-side dilation checks.
//!
//! Lower bounds come from witnesses: `‖S_N‖ ≥ ‖S_N f‖_p / ‖f‖_p` for any
//! `f`. Nothing here estimates the operator norm from above.

mod bernstein;
mod construction;
mod scan;
mod weissler;

pub use bernstein::{bernstein_constant_search, bernstein_threshold, BernsteinRow};
pub use construction::{
    extremal_fm, gn_certificate, lower_bound_big_n, primorial_index, shifted_gn, BigNCheck, GnCase, GnCertificate,
    ShiftedGn,
};
pub use scan::{helson_probe, operator_norm_scan, Family, HelsonRow, PartialSumExperiment, ScanOptions};
pub use weissler::{weissler_check, weissler_violation_search, WeisslerCheck, WeisslerSearch};

use crate::series::DirichletPolynomial;

/// `S_N f`.
pub fn partial_sum(f: &DirichletPolynomial, n: u64) -> DirichletPolynomial {
    f.truncate(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn truncation_examples() {
        let f = DirichletPolynomial::from_dense_real(&[1.0, 1.0, 1.0]);
        assert_eq!(partial_sum(&f, 2), DirichletPolynomial::from_dense_real(&[1.0, 1.0]));
        assert_eq!(partial_sum(&f, 3), f);
        assert_eq!(partial_sum(&f, 100), f);
        assert_eq!(partial_sum(&f, 1), DirichletPolynomial::constant(Complex64::new(1.0, 0.0)));
        assert!(partial_sum(&f, 0).is_zero());
    }
}
