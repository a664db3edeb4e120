use serde::{Deserialize, Serialize};

use super::params::{CounterexampleParams, FrequencyBox};
use crate::numerics::lowdisc::Kronecker4;
use crate::{Error, Result};

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `chi` for the split `(xi, eta) = (x1, y1) + (x2, y2)` with `x1, x2 > 0`, written so that
/// the `eta^2` terms never cancel against each other:
/// `3 x x1 x2 + y1^2 (x^-th - x1^-th) + y2^2 (x^-th - x2^-th) + 2 y1 y2 x^-th`.
pub fn resonance_chi_pair(x1: f64, y1: f64, x2: f64, y2: f64, theta: f64) -> f64 {
    let x = x1 + x2;
    let d1 = x1.powf(-theta) * (-theta * (x2 / x1).ln_1p()).exp_m1();
    let d2 = x2.powf(-theta) * (-theta * (x1 / x2).ln_1p()).exp_m1();
    3.0 * x * x1 * x2 + y1 * y1 * d1 + y2 * y2 * d2 + 2.0 * y1 * y2 * x.powf(-theta)
}

/// Positive-frequency branch `xi, xi1, xi - xi1 > 0`.
pub fn resonance_chi(xi: f64, xi1: f64, eta: f64, eta1: f64, theta: f64) -> Result<f64> {
    if !(xi1 > 0.0 && xi - xi1 > 0.0) {
        return Err(Error::DomainViolation(format!(
            "positive branch needs 0 < xi1 < xi, got xi = {xi}, xi1 = {xi1}"
        )));
    }
    Ok(resonance_chi_pair(xi1, eta1, xi - xi1, eta - eta1, theta))
}

/// `theta(xi, eta) - theta(xi1, eta1) - theta(xi - xi1, eta - eta1)` with the sign factors,
/// evaluated term by term. Zero frequencies contribute nothing.
pub fn resonance_chi_general(xi: f64, xi1: f64, eta: f64, eta1: f64, theta: f64) -> f64 {
    let phase = |k: f64, l: f64| {
        if k == 0.0 {
            0.0
        } else {
            k * k * k + sgn(k) * l * l * k.abs().powf(-theta)
        }
    };
    phase(xi, eta) - phase(xi1, eta1) - phase(xi - xi1, eta - eta1)
}

/// The two `eta` with `chi(xi, xi1, eta, eta1) = 0`, from the closed form
/// `eta = xi^th eta1 / [xi^th - (xi-xi1)^th] ± sqrt(...)`. `None` when the radicand is negative.
pub fn eta_roots(xi: f64, xi1: f64, eta1: f64, theta: f64) -> Option<(f64, f64)> {
    let x2 = xi - xi1;
    let (a, b, c) = (xi.powf(theta), xi1.powf(theta), x2.powf(theta));
    let den = a - c;
    let rad = 3.0 * xi.powf(1.0 + theta) * xi1 * x2.powf(1.0 + theta) / den
        + a * c * (b + c - a) * eta1 * eta1 / (den * den * b);
    if !(rad >= 0.0) {
        return None;
    }
    let mid = a * eta1 / den;
    let r = rad.sqrt();
    Some((mid - r, mid + r))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiScan {
    pub n_samples: usize,
    pub max_abs_chi: f64,
    /// `max |chi| / (gamma^2 N)` over the mixed pairings
    pub chi_ratio: f64,
    /// `max |chi|` over `D1 x D1`
    pub max_abs_chi_low: f64,
    /// `max |chi| / gamma^3` over `D1 x D1`
    pub low_ratio: f64,
}

fn at(b: &FrequencyBox, u: f64, v: f64) -> (f64, f64) {
    (b.xi_lo + u * b.xi_width(), b.eta_anchor + b.eta_lo + v * b.eta_width())
}

/// Quasi-random sup of `|chi|` with one summand in `D1` and the other in `D2`
/// (both orders), plus the low-low pairing for comparison.
pub fn chi_bound_scan(p: &CounterexampleParams, n_samples: usize) -> Result<ChiScan> {
    if n_samples < 10_000 {
        return Err(Error::InvalidArgument(format!("n_samples = {n_samples} < 10^4")));
    }
    let th = p.theta();
    let (d1, d2) = (p.d1(), p.d2());
    let mut mixed = 0.0f64;
    let mut low = 0.0f64;
    for s in Kronecker4::new([0.5; 4]).take(n_samples) {
        let (x1, y1) = at(&d2, s[0], s[1]);
        let (x2, y2) = at(&d1, s[2], s[3]);
        mixed = mixed
            .max(resonance_chi_pair(x1, y1, x2, y2, th).abs())
            .max(resonance_chi_pair(x2, y2, x1, y1, th).abs());
        let (a1, b1) = at(&d1, s[0], s[1]);
        low = low.max(resonance_chi_pair(a1, b1, x2, y2, th).abs());
    }
    let g = p.gamma();
    Ok(ChiScan {
        n_samples,
        max_abs_chi: mixed,
        chi_ratio: mixed / (g * g * p.big_n),
        max_abs_chi_low: low,
        low_ratio: low / g.powi(3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_eta_value() {
        for th in [0.1, 0.5, 1.0] {
            assert!((resonance_chi(2.0, 1.0, 0.0, 0.0, th).unwrap() - 6.0).abs() < 1e-14);
            assert!((resonance_chi_general(2.0, 1.0, 0.0, 0.0, th) - 6.0).abs() < 1e-14);
        }
        assert!(matches!(resonance_chi(1.0, 1.0, 0.0, 0.0, 1.0), Err(Error::DomainViolation(_))));
    }

    #[test]
    fn pair_form_matches_naive_at_moderate_size() {
        let v = resonance_chi(3.0, 1.2, 2.5, -0.7, 0.6).unwrap();
        let w = resonance_chi_general(3.0, 1.2, 2.5, -0.7, 0.6);
        assert!((v - w).abs() < 1e-12 * w.abs().max(1.0));
    }

    #[test]
    fn corner_sample_matches_direct_value() {
        let p = CounterexampleParams::new(-1.0, 0.01, 256.0, 0.0, 0.0).unwrap();
        let (d1, d2) = (p.d1(), p.d2());
        let (x1, y1) = at(&d2, 0.0, 0.0);
        let (x2, y2) = at(&d1, 1.0, 1.0);
        let a = resonance_chi_pair(x1, y1, x2, y2, 1.0);
        let b = resonance_chi(x1 + x2, x1, y1 + y2, y1, 1.0).unwrap();
        // only the rounding of x1 + x2 - x1 separates the two
        assert!((a - b).abs() < 1e-9 * 3.0 * (x1 + x2) * x1 * x2);
    }
}
