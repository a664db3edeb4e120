use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::chi::resonance_chi_pair;
use super::params::{CounterexampleParams, FrequencyBox};
use crate::numerics::gauss_legendre;
use crate::spectral_core::japanese;
use crate::{Error, Result};

/// `(e^{i t chi} - 1) / chi` as `i t e^{i t chi / 2} sinc(t chi / 2)`, finite at `chi = 0`.
pub fn duhamel_kernel(t: f64, chi: f64) -> Complex64 {
    let z = 0.5 * t * chi;
    let sinc = if z.abs() < 1e-4 { 1.0 - z * z / 6.0 } else { z.sin() / z };
    Complex64::new(0.0, t) * Complex64::from_polar(sinc, z)
}

pub fn duhamel_kernel_naive(t: f64, chi: f64) -> Complex64 {
    (Complex64::new(0.0, t * chi).exp() - 1.0) / chi
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct F3Quadrature {
    /// Gauss-Legendre nodes per axis of the inner (pair) integral
    pub inner: usize,
    /// nodes per axis on each of the 3 x 3 outer pieces
    pub outer: usize,
    pub budget: usize,
}

impl Default for F3Quadrature {
    fn default() -> Self {
        Self { inner: 16, outer: 12, budget: 200_000_000 }
    }
}

impl F3Quadrature {
    fn check(&self, pieces: usize) -> Result<()> {
        if self.inner < 2 || self.outer < 2 {
            return Err(Error::InvalidArgument("quadrature needs at least 2 nodes per axis".into()));
        }
        let estimate = 2.0 * pieces as f64 * ((self.outer * self.inner) as f64).powi(2);
        if estimate > self.budget as f64 {
            return Err(Error::QuadratureBudget { budget: self.budget, estimate });
        }
        Ok(())
    }
}

fn dispersion(xi: f64, eta: f64, theta: f64) -> f64 {
    xi.powi(3) + xi.signum() * eta * eta * xi.abs().powf(-theta)
}

/// Inner integral over the ordered pairs `(q, p - q)` with `q` in `a` and `p - q` in `b`,
/// of the Duhamel kernel. `eta_loc` is relative to the summed anchor.
fn pair_integral(t: f64, xi: f64, eta_loc: f64, a: &FrequencyBox, b: &FrequencyBox, theta: f64, n: usize) -> Complex64 {
    let x_lo = a.xi_lo.max(xi - b.xi_hi);
    let x_hi = a.xi_hi.min(xi - b.xi_lo);
    let y_lo = a.eta_lo.max(eta_loc - b.eta_hi);
    let y_hi = a.eta_hi.min(eta_loc - b.eta_lo);
    if x_lo >= x_hi || y_lo >= y_hi {
        return Complex64::new(0.0, 0.0);
    }
    let (xs, wx) = gauss_legendre(n, x_lo, x_hi);
    let (ys, wy) = gauss_legendre(n, y_lo, y_hi);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x1, w1) in xs.iter().zip(&wx) {
        let x2 = xi - x1;
        for (y1, w2) in ys.iter().zip(&wy) {
            let y2 = eta_loc - y1;
            let chi = resonance_chi_pair(*x1, a.eta_anchor + y1, x2, b.eta_anchor + y2, theta);
            acc += duhamel_kernel(t, chi) * (w1 * w2);
        }
    }
    acc
}

/// Ordered-pair piece `(xi / 4 pi) e^{-i t theta(xi, eta)} amp ∫ K(t, chi)` of the second iterate.
pub fn eval_pair_hat(
    t: f64,
    xi: f64,
    eta_loc: f64,
    a: &FrequencyBox,
    b: &FrequencyBox,
    amp: f64,
    theta: f64,
    q: &F3Quadrature,
) -> Complex64 {
    if t == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let eta = a.eta_anchor + b.eta_anchor + eta_loc;
    let pre = Complex64::from_polar(xi / (4.0 * PI) * amp, -t * dispersion(xi, eta, theta));
    pre * pair_integral(t, xi, eta_loc, a, b, theta, q.inner)
}

/// `f3^(t, xi, eta)` for the unitary transform convention; `eta_loc` is measured from the
/// anchor of `D1 + D2`. Both orderings of the mixed pairing are summed.
pub fn eval_f3_hat(t: f64, xi: f64, eta_loc: f64, p: &CounterexampleParams, q: &F3Quadrature) -> Complex64 {
    let (d1, d2) = (p.d1(), p.d2());
    let amp = p.gamma().powf(-3.0) * p.weight2();
    eval_pair_hat(t, xi, eta_loc, &d2, &d1, amp, p.theta(), q) + eval_pair_hat(t, xi, eta_loc, &d1, &d2, amp, p.theta(), q)
}

fn breaks(a: [f64; 2], b: [f64; 2]) -> Vec<f64> {
    let mut v = vec![a[0] + b[0], a[0] + b[1], a[1] + b[0], a[1] + b[1]];
    v.sort_by(f64::total_cmp);
    v
}

/// `H^{s1,s2}` norm of the pair piece over the sum box; with `both_orders` the two
/// orderings of `(a, b)` are added before taking the modulus.
#[allow(clippy::too_many_arguments)]
pub fn pair_norm(
    t: f64,
    a: &FrequencyBox,
    b: &FrequencyBox,
    amp: f64,
    theta: f64,
    s: (f64, f64),
    both_orders: bool,
    q: &F3Quadrature,
) -> Result<f64> {
    q.check(9)?;
    let xb = breaks([a.xi_lo, a.xi_hi], [b.xi_lo, b.xi_hi]);
    let yb = breaks([a.eta_lo, a.eta_hi], [b.eta_lo, b.eta_hi]);
    let anchor = a.eta_anchor + b.eta_anchor;
    let mut tot = 0.0;
    for i in 0..3 {
        if xb[i + 1] <= xb[i] {
            continue;
        }
        let (xs, wx) = gauss_legendre(q.outer, xb[i], xb[i + 1]);
        for j in 0..3 {
            if yb[j + 1] <= yb[j] {
                continue;
            }
            let (ys, wy) = gauss_legendre(q.outer, yb[j], yb[j + 1]);
            for (x, w1) in xs.iter().zip(&wx) {
                for (y, w2) in ys.iter().zip(&wy) {
                    let mut f = eval_pair_hat(t, *x, *y, a, b, amp, theta, q);
                    if both_orders {
                        f += eval_pair_hat(t, *x, *y, b, a, amp, theta, q);
                    }
                    let wt = japanese(*x).powf(2.0 * s.0) + japanese(anchor + y).powf(2.0 * s.1);
                    tot += w1 * w2 * wt * f.norm_sqr();
                }
            }
        }
    }
    Ok(tot.sqrt())
}

/// `|f3(t)|_{H^{s1,s2}}` over the positive-frequency output box `D1 + D2`.
pub fn f3_norm(t: f64, p: &CounterexampleParams, q: &F3Quadrature) -> Result<f64> {
    let amp = p.gamma().powf(-3.0) * p.weight2();
    pair_norm(t, &p.d2(), &p.d1(), amp, p.theta(), (p.s1, p.s2), true, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_forms_agree_away_from_zero() {
        for (t, chi) in [(1.0, 3.7), (0.3, -12.0), (2.0, 1e-5), (1.0, 1e-3), (5.0, 40.0)] {
            let (a, b) = (duhamel_kernel(t, chi), duhamel_kernel_naive(t, chi));
            assert!((a - b).norm() <= 1e-10 * a.norm(), "{t} {chi}");
        }
        // the stable form reaches i t with no cancellation
        let k = duhamel_kernel(1.5, 1e-14);
        assert!((k - Complex64::new(0.0, 1.5)).norm() < 1e-13);
        assert!(!duhamel_kernel_naive(1.5, 0.0).re.is_finite());
        assert_eq!(duhamel_kernel(1.5, 0.0), Complex64::new(0.0, 1.5));
    }

    #[test]
    fn zero_time_vanishes() {
        let p = CounterexampleParams::new(-1.0, 0.01, 64.0, 0.0, 0.0).unwrap();
        let q = F3Quadrature::default();
        assert_eq!(f3_norm(0.0, &p, &q).unwrap(), 0.0);
        let (d1, d2) = (p.d1(), p.d2());
        let v = eval_f3_hat(1.0, d1.xi_hi + d2.xi_lo, 0.5 * (d1.eta_hi + d2.eta_lo), &p, &q);
        assert!(v.norm() > 0.0);
    }

    #[test]
    fn orderings_agree() {
        let p = CounterexampleParams::new(-0.5, 0.02, 128.0, 0.0, 0.0).unwrap();
        let q = F3Quadrature::default();
        let (d1, d2) = (p.d1(), p.d2());
        let (x, y) = (d2.xi_lo + 0.8 * p.gamma(), 0.3 * d2.eta_hi);
        let a = eval_pair_hat(1.0, x, y, &d2, &d1, 1.0, p.theta(), &q);
        let b = eval_pair_hat(1.0, x, y, &d1, &d2, 1.0, p.theta(), &q);
        assert!((a - b).norm() < 1e-9 * a.norm());
    }

    #[test]
    fn budget_is_enforced() {
        let p = CounterexampleParams::new(-1.0, 0.01, 64.0, 0.0, 0.0).unwrap();
        let q = F3Quadrature { budget: 1000, ..Default::default() };
        assert!(matches!(f3_norm(1.0, &p, &q), Err(Error::QuadratureBudget { .. })));
    }
}
