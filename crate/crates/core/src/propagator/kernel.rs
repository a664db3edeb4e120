use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::group::DispersionSpec;
use crate::numerics::GaussKronrod;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelEval {
    pub value: Complex64,
    pub abs_err: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct KernelOptions {
    /// rotation angle of the integration rays, in (0, pi/6)
    pub angle: f64,
    pub rel_tol: f64,
    /// total evaluation budget over both rays
    pub budget: usize,
}

impl Default for KernelOptions {
    fn default() -> Self {
        Self { angle: PI / 8.0, rel_tol: 1e-10, budget: 20_000 }
    }
}

/// `D_x^beta S_t(x, y) = ∫∫ |xi|^beta e^{i(x xi + y eta) - i t theta(xi, eta)} dxi deta`.
///
/// The eta integral is a Fresnel integral done in closed form; the remaining
/// xi integral runs along two rays rotated into the sector where `e^{-i t xi^3}`
/// decays, which turns the oscillatory tail into an exponentially small one.
pub fn kernel_reduced(t: f64, x: f64, y: f64, beta: f64, spec: &DispersionSpec) -> Result<KernelEval> {
    kernel_mollified(t, x, y, beta, spec, 0.0, &KernelOptions::default())
}

/// Same integral with the Gaussian factor `e^{-sigma^2 (xi^2 + eta^2)/2}`, i.e. the
/// kernel convolved with a unit-mass Gaussian of width `sigma` (times `4 pi^2`).
pub fn kernel_mollified(
    t: f64,
    x: f64,
    y: f64,
    beta: f64,
    spec: &DispersionSpec,
    sigma: f64,
    opts: &KernelOptions,
) -> Result<KernelEval> {
    if t == 0.0 {
        return Err(Error::InvalidArgument("kernel needs t != 0".into()));
    }
    if !(opts.angle > 0.0 && opts.angle < PI / 6.0) {
        return Err(Error::InvalidArgument("ray angle must lie in (0, pi/6)".into()));
    }
    let alpha = spec.alpha;
    let singular = sigma == 0.0 || alpha < 0.0;
    if singular && beta - alpha / 2.0 <= -1.0 {
        return Err(Error::DomainViolation(format!(
            "|xi|^(beta - alpha/2) is not integrable at 0 for beta = {beta}"
        )));
    }
    if t < 0.0 {
        // K(-t, x, y) = conj K(t, -x, y)
        let k = kernel_mollified(-t, -x, y, beta, spec, sigma, opts)?;
        return Ok(KernelEval { value: k.value.conj(), ..k });
    }

    let phi = opts.angle;
    // power of r at the origin, removed by the substitution r = u^{1/(1+gamma)}
    let gamma = if singular { beta - alpha / 2.0 } else { beta };
    let p = 1.0 / (1.0 + gamma);
    let r_cut = truncation_radius(t, x, y, alpha, phi);
    let u_cut = r_cut.powf(1.0 + gamma);
    let u_mid = t.powf(-(1.0 + gamma) / 3.0).min(0.5 * u_cut);
    let gk = GaussKronrod { abs_tol: 1e-15, rel_tol: opts.rel_tol, max_evals: opts.budget / 2 };

    let mut value = Complex64::default();
    let mut abs_err = 0.0;
    let mut evaluations = 0;
    for s in [1.0f64, -1.0] {
        let rot = Complex64::cis(-s * phi);
        let integrand = |u: f64| -> Complex64 {
            if u <= 0.0 {
                return Complex64::default();
            }
            let r = u.powf(p);
            let jac = p * u.powf(p - 1.0);
            let a = rot * r; // continuation of |xi|
            let xi = a * s;
            let c = Complex64::new(0.5 * sigma * sigma, 0.0) + Complex64::i() * t * s * a.powf(alpha);
            let expo = -Complex64::i() * t * xi * xi * xi + Complex64::i() * x * xi
                - 0.5 * sigma * sigma * xi * xi
                - y * y / (4.0 * c);
            a.powf(beta) * (Complex64::new(PI, 0.0) / c).sqrt() * expo.exp() * rot * jac
        };
        let res = gk.integrate(integrand, 0.0, u_cut, &[u_mid])?;
        value += res.value;
        abs_err += res.abs_err;
        evaluations += res.evaluations;
    }
    Ok(KernelEval { value, abs_err, evaluations })
}

/// Radius beyond which the integrand on both rays is below e^{-45} of its scale.
fn truncation_radius(t: f64, x: f64, y: f64, alpha: f64, phi: f64) -> f64 {
    let bound = |r: f64| {
        -t * r.powi(3) * (3.0 * phi).sin()
            + x.abs() * r * phi.sin()
            + y * y / (4.0 * t) * (1.0 + r.powf(alpha.abs()))
    };
    let mut r = t.powf(-1.0 / 3.0);
    while bound(r) > -45.0 {
        r *= 1.25;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_in_y() {
        for a in [1.0, 0.0, -1.0, 0.4] {
            let s = DispersionSpec { alpha: a };
            let k1 = kernel_reduced(1.3, 0.4, 0.7, 0.0, &s).unwrap().value;
            let k2 = kernel_reduced(1.3, 0.4, -0.7, 0.0, &s).unwrap().value;
            assert!((k1 - k2).norm() <= 1e-14 * k1.norm());
        }
    }

    #[test]
    fn kernel_is_real() {
        // theta is odd in xi, so the kernel of a real group is real
        let s = DispersionSpec { alpha: 0.5 };
        let k = kernel_reduced(2.0, -0.6, 0.9, 0.2, &s).unwrap();
        assert!(k.value.im.abs() < 1e-8 * k.value.norm(), "{:?}", k);
    }

    #[test]
    fn error_estimate_reported() {
        let s = DispersionSpec { alpha: 1.0 };
        let k = kernel_reduced(1.0, 0.3, 0.2, 0.0, &s).unwrap();
        assert!(k.abs_err < 1e-8 * k.value.norm());
        assert!(k.evaluations > 0 && k.evaluations <= 20_000);
    }

    #[test]
    fn rejects_nonintegrable_weight() {
        let s = DispersionSpec { alpha: 1.0 };
        assert!(kernel_reduced(1.0, 0.0, 0.0, -0.6, &s).is_err());
        assert!(kernel_reduced(0.0, 0.0, 0.0, 0.0, &s).is_err());
    }
}
