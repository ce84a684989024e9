use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_beta, pair_h2};
use crate::error::{domain, Result};
use crate::numeric::{composite_gauss, gamma};
use crate::series::DirichletPolynomial;

/// Number of halvings between `scale` and the analytic end piece near 0.
const GRADING_LEVELS: i32 = 60;
/// Upper end of the tail integral, in units where the integrand decays at
/// least like `2^{-u}`.
const TAIL_END: f64 = 64.0;

/// `∫_0^b h(u) u^{β-1} du` on panels `[s 2^{-k-1}, s 2^{-k}]` toward 0 and
/// doubling panels from `s` to `b`; the piece below `s 2^{-60}` is
/// `h(0) ε^β / β`.
fn graded_integral<H: Fn(f64) -> Complex64>(h: &H, beta: f64, scale: f64, b: f64, order: usize) -> Complex64 {
    let eps = scale * 2f64.powi(-GRADING_LEVELS);
    let mut acc = h(0.0) * eps.powf(beta) / beta;
    let mut panel = |a: f64, c: f64| {
        let (xs, ws) = composite_gauss(a, c, 1, order);
        for (x, w) in xs.iter().zip(&ws) {
            acc += h(*x) * (w * x.powf(beta - 1.0));
        }
    };
    for k in (0..GRADING_LEVELS).rev() {
        panel(scale * 2f64.powi(-k - 1), scale * 2f64.powi(-k));
    }
    let mut a = scale;
    while a < b {
        let c = (2.0 * a).min(b);
        panel(a, c);
        a = c;
    }
    acc
}

/// `Γ(β)^{-1} ∫_0^∞ h(u) u^{β-1} du` for `h` decaying at least like
/// `2^{-u}`; `scale` is the length on which `h` varies near 0. Returns the
/// value and the difference between two quadrature orders.
pub fn mellin_integral<H: Fn(f64) -> Complex64>(h: H, beta: f64, scale: f64) -> Result<(Complex64, f64)> {
    check_beta(beta)?;
    if !(scale > 0.0 && scale <= TAIL_END) {
        return Err(domain(format!("scale {scale} outside (0, {TAIL_END}]")));
    }
    let g = gamma(beta);
    let coarse = graded_integral(&h, beta, scale, TAIL_END, 16) / g;
    let fine = graded_integral(&h, beta, scale, TAIL_END, 24) / g;
    Ok((fine, (fine - coarse).norm()))
}

/// Both integral forms of `⟨f, φ_β⟩` next to the coefficient pairing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfplaneCheck {
    pub beta: f64,
    pub pairing: Complex64,
    /// `a_1 + Γ(β)^{-1} ∫_{1/2}^∞ (f(σ) - a_1)(σ - 1/2)^{β-1} dσ`.
    pub representation: Complex64,
    pub representation_error: f64,
    /// `∫_{1/2}^{3/2} f(σ)(σ - 1/2)^{β-1} dσ`.
    pub segment: Complex64,
    pub segment_error: f64,
    /// `|pairing - representation|`.
    pub difference: f64,
}

/// Evaluates the half-line functionals of `f` with exponent `β - 1`
/// (`β = 1/p` for the `H^p` question).
pub fn halfplane_functional_check(f: &DirichletPolynomial, beta: f64) -> Result<HalfplaneCheck> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(domain(format!("(σ - 1/2)^{} is not integrable at 1/2", beta - 1.0)));
    }
    let a1 = f.coefficient(1);
    let terms: Vec<(f64, Complex64)> = f
        .iter()
        .filter(|&(n, _)| n >= 2)
        .map(|(n, a)| ((n as f64).ln(), a / (n as f64).sqrt()))
        .collect();
    let tail = |u: f64| terms.iter().map(|&(l, c)| c * (-u * l).exp()).sum::<Complex64>();
    let scale = 1.0 / (f.length().max(3) as f64).ln();
    let (integral, representation_error) = mellin_integral(tail, beta, scale)?;
    let full = |u: f64| a1 + tail(u);
    let segment = graded_integral(&full, beta, scale.min(1.0), 1.0, 24);
    let segment_coarse = graded_integral(&full, beta, scale.min(1.0), 1.0, 16);
    let pairing = pair_h2(f, beta)?;
    let representation = a1 + integral;
    Ok(HalfplaneCheck {
        beta,
        pairing,
        representation,
        representation_error,
        segment,
        segment_error: (segment - segment_coarse).norm(),
        difference: (pairing - representation).norm(),
    })
}
