use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

const SCAN_POINTS: usize = 2048;
const GOLDEN_TOL: f64 = 1e-14;

/// The dilation upper bound for `C(k,p)` and its two closed-form endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaBound {
    pub k: u32,
    pub p: f64,
    pub value: f64,
    pub argmin: f64,
    /// Objective at `x = p`, i.e. `p^{-k/2}`.
    pub at_p: f64,
    /// Objective at `x = 1 - (1-p)/k`.
    pub at_balanced: f64,
}

/// `log(x^{-k/2} (1-x)^{1/x - 1/p})`.
fn log_objective(x: f64, k: u32, p: f64) -> f64 {
    -0.5 * k as f64 * x.ln() + (1.0 / x - 1.0 / p) * (-x).ln_1p()
}

/// `min_{p ≤ x < 1} x^{-k/2} (1-x)^{1/x-1/p}` by a scan followed by
/// golden-section refinement; ties resolve to the leftmost point.
pub fn ck_upper_lemma(k: u32, p: f64) -> Result<LemmaBound> {
    if k < 1 {
        return Err(domain("the dilation bound needs k >= 1"));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(domain(format!("the dilation bound needs 0 < p < 1, got {p}")));
    }
    let f = |x: f64| log_objective(x, k, p);
    // Scan in t = -log(1-x), which spreads points toward x = 1.
    let t0 = -(-p).ln_1p();
    let t1 = 40.0f64.max(4.0 * t0);
    let to_x = |t: f64| -(-t).exp_m1();
    let mut best = (f(p), 0usize);
    let ts: Vec<f64> = (0..=SCAN_POINTS).map(|i| t0 + (t1 - t0) * i as f64 / SCAN_POINTS as f64).collect();
    for (i, &t) in ts.iter().enumerate().skip(1) {
        let v = f(to_x(t));
        if v < best.0 {
            best = (v, i);
        }
    }
    let lo = ts[best.1.saturating_sub(1)];
    let hi = ts[(best.1 + 1).min(SCAN_POINTS)];
    let (mut a, mut b) = (lo, hi);
    let g = |t: f64| f(to_x(t));
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let (mut fc, mut fd) = (g(c), g(d));
    while (b - a).abs() > GOLDEN_TOL * (1.0 + a.abs()) {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = g(d);
        }
    }
    let mut t_best = 0.5 * (a + b);
    let mut v_best = g(t_best);
    if best.0 <= v_best {
        t_best = ts[best.1];
        v_best = best.0;
    }
    let balanced = 1.0 - (1.0 - p) / k as f64;
    Ok(LemmaBound {
        k,
        p,
        value: v_best.exp(),
        argmin: to_x(t_best).max(p),
        at_p: p.powf(-0.5 * k as f64),
        at_balanced: log_objective(balanced, k, p).exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremals::c1_closed_form;

    #[test]
    fn endpoints_and_bracketing() {
        let b = ck_upper_lemma(1, 0.5).unwrap();
        assert!((b.at_p - 2f64.sqrt()).abs() < 1e-15);
        assert!(b.value >= c1_closed_form(0.5).unwrap());
        assert!(b.value <= b.at_p && b.value <= b.at_balanced);
        assert!(ck_upper_lemma(2, 0.5).unwrap().value >= b.value);
        assert!(ck_upper_lemma(0, 0.5).is_err());
        assert!(ck_upper_lemma(1, 1.0).is_err());
    }

    #[test]
    fn scan_agrees_with_fine_grid() {
        for &(k, p) in &[(1u32, 0.25), (3, 0.5), (6, 0.75), (40, 0.1)] {
            let b = ck_upper_lemma(k, p).unwrap();
            let brute = (0..200_000)
                .map(|i| p + (1.0 - p) * i as f64 / 200_000.0)
                .map(|x| log_objective(x, k, p))
                .fold(f64::INFINITY, f64::min)
                .exp();
            assert!(b.value <= brute * (1.0 + 1e-9), "k={k} p={p}: {} vs {brute}", b.value);
            assert!(b.value >= brute * (1.0 - 1e-6));
        }
    }
}
