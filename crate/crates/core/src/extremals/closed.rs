use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{config, domain, Result};
use crate::series::{series_power, UnivariatePolynomial};

/// Default truncation degree when `2/p` is not an integer.
pub const DEFAULT_TRUNCATION: usize = 40;

/// `C(1,p)`: 1 for `p ≥ 1`, `√(2/p) (1 - p/2)^{1/p - 1/2}` below.
pub fn c1_closed_form(p: f64) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(domain(format!("p = {p} must be positive")));
    }
    if p >= 1.0 {
        return Ok(1.0);
    }
    Ok((2.0 / p).sqrt() * (1.0 - p / 2.0).powf(1.0 / p - 0.5))
}

/// Extremal families for the first coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "variant", content = "a")]
pub enum C1Variant {
    /// `z`, for `p > 1`.
    A,
    /// `(a + √(1-a²) z)(√(1-a²) + a z)`, for `p = 1`.
    B(f64),
    /// `(√(1-p/2) + z √(p/2))^{2/p}`, for `p < 1`.
    C,
}

/// A truncated extremal together with a bound on the discarded tail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extremal {
    pub polynomial: UnivariatePolynomial,
    /// `Σ_{j > D} |c_j|^2` of the exact series beyond the truncation, 0 when
    /// the expansion is finite; for `z^{j}` coefficients bounded by a
    /// geometric tail from the last two kept terms.
    pub tail_l2: f64,
    pub exact: bool,
}

fn integer_exponent(x: f64) -> Option<u32> {
    let r = x.round();
    ((x - r).abs() < 1e-12 && r >= 1.0).then_some(r as u32)
}

pub fn extremal_c1(p: f64, variant: C1Variant, degree: Option<usize>) -> Result<Extremal> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(domain(format!("p = {p} must be positive")));
    }
    match variant {
        C1Variant::A => Ok(Extremal { polynomial: UnivariatePolynomial::monomial(1), tail_l2: 0.0, exact: true }),
        C1Variant::B(a) => {
            if !(0.0..=1.0).contains(&a) {
                return Err(domain(format!("family parameter a = {a} outside [0, 1]")));
            }
            let b = (1.0 - a * a).sqrt();
            let g = UnivariatePolynomial::from_real(&[a, b]);
            let h = UnivariatePolynomial::from_real(&[b, a]);
            Ok(Extremal { polynomial: g.multiply(&h), tail_l2: 0.0, exact: true })
        }
        C1Variant::C => {
            let base = [Complex64::new((1.0 - p / 2.0).sqrt(), 0.0), Complex64::new((p / 2.0).sqrt(), 0.0)];
            let alpha = 2.0 / p;
            if let Some(k) = integer_exponent(alpha) {
                let poly = UnivariatePolynomial::new(base.to_vec()).power(k);
                return Ok(Extremal { polynomial: poly, tail_l2: 0.0, exact: true });
            }
            let d = degree.unwrap_or(DEFAULT_TRUNCATION);
            if d < 1 {
                return Err(config("truncation degree must be at least 1"));
            }
            let coeffs = series_power(&base, alpha, d + 1)?;
            // |c_{j+1}/c_j| → ratio of the base coefficients, so bound the
            // tail by a geometric series from the last observed ratio.
            let last = coeffs[d + 1].norm();
            let q = (coeffs[d + 1].norm() / coeffs[d].norm().max(f64::MIN_POSITIVE)).max(base[1].re / base[0].re);
            let tail_l2 = if q < 1.0 { last * last / (1.0 - q * q) } else { f64::INFINITY };
            Ok(Extremal { polynomial: UnivariatePolynomial::new(coeffs[..=d].to_vec()), tail_l2, exact: false })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert_eq!(c1_closed_form(1.0).unwrap(), 1.0);
        assert!((c1_closed_form(0.5).unwrap() - 2.0 * 0.75f64.powf(1.5)).abs() < 1e-15);
        assert!((c1_closed_form(0.5).unwrap() - 1.299038).abs() < 1e-6);
        let lim = (2.0 / std::f64::consts::E).sqrt();
        assert!(((0.01f64.sqrt() * c1_closed_form(0.01).unwrap()) / lim - 1.0).abs() < 0.05);
        assert!((c1_closed_form(1.0 - 1e-9).unwrap() - 1.0).abs() < 1e-8);
        assert!(c1_closed_form(0.0).is_err());
    }

    #[test]
    fn extremal_expansions() {
        let e = extremal_c1(0.5, C1Variant::C, None).unwrap();
        assert!(e.exact && e.polynomial.degree() == 4);
        assert!((e.polynomial.coefficient(4).re - 1.0 / 16.0).abs() < 1e-15);
        assert!((e.polynomial.coefficient(1).re - c1_closed_form(0.5).unwrap()).abs() < 1e-14);
        let b = extremal_c1(1.0, C1Variant::B(1.0), None).unwrap().polynomial;
        assert_eq!(b, UnivariatePolynomial::monomial(1));
        assert!(extremal_c1(1.0, C1Variant::B(1.5), None).is_err());
        let t = extremal_c1(0.3, C1Variant::C, Some(40)).unwrap();
        assert!(!t.exact && t.tail_l2 < 1e-12);
        assert!((t.polynomial.coefficient(1).re - c1_closed_form(0.3).unwrap()).abs() < 1e-13);
    }
}
