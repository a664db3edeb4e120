use num_complex::Complex64;

use super::field::Field;
use super::multiplier::{apply_multiplier, MultiplierSpec, NyquistRule, ZeroModeRule};
use crate::{Error, Result};

const ZERO: ZeroModeRule = ZeroModeRule::Value(Complex64 { re: 0.0, im: 0.0 });

/// Relative size of kx = 0 content tolerated by `inv_dx`.
pub const INV_DX_TOL: f64 = 1e-10;

/// `<k> = (1 + k^2)^{1/2}`
pub fn japanese(k: f64) -> f64 {
    (1.0 + k * k).sqrt()
}

impl MultiplierSpec {
    pub fn hilbert_x() -> Self {
        Self::new(|kx, _| Complex64::new(0.0, -kx.signum()), ZERO, NyquistRule::ZeroX)
    }

    pub fn deriv_x() -> Self {
        Self::new(|kx, _| Complex64::new(0.0, kx), ZeroModeRule::Symbol, NyquistRule::ZeroX)
    }

    pub fn deriv_y() -> Self {
        Self::new(|_, ky| Complex64::new(0.0, ky), ZeroModeRule::Symbol, NyquistRule::ZeroY)
    }

    /// `|kx|^a`, with the kx = 0 plane mapped to zero for every order.
    pub fn frac_x(a: f64) -> Self {
        Self::real(move |kx, _| kx.abs().powf(a), ZERO, NyquistRule::Keep)
    }

    /// `|ky|^a`, zero on ky = 0.
    pub fn frac_y(a: f64) -> Self {
        Self::real(
            move |_, ky| if ky == 0.0 { 0.0 } else { ky.abs().powf(a) },
            ZeroModeRule::Symbol,
            NyquistRule::Keep,
        )
    }

    pub fn bessel_x(s: f64) -> Self {
        Self::real(move |kx, _| (1.0 + kx * kx).powf(0.5 * s), ZeroModeRule::Symbol, NyquistRule::Keep)
    }

    pub fn bessel_y(s: f64) -> Self {
        Self::real(move |_, ky| (1.0 + ky * ky).powf(0.5 * s), ZeroModeRule::Symbol, NyquistRule::Keep)
    }

    pub fn bessel_iso(s: f64) -> Self {
        Self::real(
            move |kx, ky| (1.0 + kx * kx + ky * ky).powf(0.5 * s),
            ZeroModeRule::Symbol,
            NyquistRule::Keep,
        )
    }

    pub fn inv_dx() -> Self {
        Self::new(|kx, _| Complex64::new(0.0, -1.0 / kx), ZERO, NyquistRule::ZeroX)
    }

    pub fn inv_dx_dy() -> Self {
        Self::real(|kx, ky| ky / kx, ZERO, NyquistRule::ZeroBoth)
    }

    pub fn bona_smith(tau: f64, s1: f64, s2: f64) -> Self {
        Self::real(
            move |kx, ky| (-tau * (japanese(kx).powf(s1) + japanese(ky).powf(s2))).exp(),
            ZeroModeRule::Symbol,
            NyquistRule::Keep,
        )
    }
}

fn infallible(f: &Field, m: &MultiplierSpec) -> Field {
    apply_multiplier(f, m).expect("shipped symbols are finite and Hermitian")
}

pub fn hilbert_x(f: &Field) -> Field {
    infallible(f, &MultiplierSpec::hilbert_x())
}

pub fn deriv_x(f: &Field) -> Field {
    infallible(f, &MultiplierSpec::deriv_x())
}

pub fn deriv_y(f: &Field) -> Field {
    infallible(f, &MultiplierSpec::deriv_y())
}

pub fn frac_deriv_x(f: &Field, a: f64) -> Result<Field> {
    if !(-2.0..=2.0).contains(&a) {
        return Err(Error::InvalidArgument(format!("fractional order {a} outside [-2, 2]")));
    }
    Ok(infallible(f, &MultiplierSpec::frac_x(a)))
}

/// `J_x^{sx} J_y^{sy}`.
pub fn bessel(f: &Field, sx: f64, sy: f64) -> Field {
    infallible(f, &MultiplierSpec::bessel_x(sx).then(&MultiplierSpec::bessel_y(sy)))
}

/// Isotropic `J^s`.
pub fn bessel_iso(f: &Field, s: f64) -> Field {
    infallible(f, &MultiplierSpec::bessel_iso(s))
}

fn check_zero_x_mean(f: &Field) -> Result<()> {
    let c = f.spectral_values();
    let g = f.grid();
    let norm = f.l2_norm();
    if norm == 0.0 {
        return Ok(());
    }
    let nx = g.nx();
    let worst = (0..g.ny()).map(|m| c[m * nx].norm()).fold(0.0, f64::max);
    let relative = worst * g.area().sqrt() / norm;
    if relative > INV_DX_TOL {
        return Err(Error::NonzeroXMean { relative });
    }
    Ok(())
}

/// `∂_x^{-1}`; requires the kx = 0 plane to be empty.
pub fn inv_dx(f: &Field) -> Result<Field> {
    check_zero_x_mean(f)?;
    Ok(infallible(f, &MultiplierSpec::inv_dx()))
}

/// `∂_x^{-1} ∂_y`; same precondition as [`inv_dx`].
pub fn inv_dx_dy(f: &Field) -> Result<Field> {
    check_zero_x_mean(f)?;
    Ok(infallible(f, &MultiplierSpec::inv_dx_dy()))
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SmoothingParams {
    pub tau: f64,
    pub theta_smooth: f64,
    pub s1: f64,
    pub s2: f64,
}

impl SmoothingParams {
    pub fn new(tau: f64, theta_smooth: f64, s1: f64, s2: f64) -> Result<Self> {
        if !(tau >= theta_smooth && theta_smooth >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "need tau >= theta >= 0, got tau={tau}, theta={theta_smooth}"
            )));
        }
        if !(s1 > 0.0 && s2 > 0.0) {
            return Err(Error::InvalidArgument(format!("need s1, s2 > 0, got {s1}, {s2}")));
        }
        Ok(Self { tau, theta_smooth, s1, s2 })
    }
}

/// Bona-Smith regularization `f^tau`.
pub fn bona_smith_smooth(f: &Field, p: &SmoothingParams) -> Field {
    if p.tau == 0.0 {
        return f.clone();
    }
    infallible(f, &MultiplierSpec::bona_smith(p.tau, p.s1, p.s2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::SpectralGrid;
    use std::f64::consts::PI;

    fn g() -> SpectralGrid {
        SpectralGrid::new(32, 16, 2.0 * PI, 2.0 * PI).unwrap()
    }

    fn close(a: &Field, b: &Field, tol: f64) -> bool {
        let d = a.sub(b).unwrap().l2_norm();
        d <= tol * b.l2_norm().max(1.0)
    }

    #[test]
    fn hilbert_examples() {
        let g = g();
        let c3 = Field::from_fn(&g, |x, _| (3.0 * x).cos());
        assert!(close(&hilbert_x(&c3), &Field::from_fn(&g, |x, _| (3.0 * x).sin()), 1e-13));
        let s1 = Field::from_fn(&g, |x, _| x.sin());
        assert!(close(&hilbert_x(&s1), &Field::from_fn(&g, |x, _| -x.cos()), 1e-13));
        let k = Field::from_fn(&g, |_, _| 2.5);
        assert!(hilbert_x(&k).sup_norm() < 1e-14);
    }

    #[test]
    fn frac_examples() {
        let g = g();
        let f = Field::from_fn(&g, |x, y| (4.0 * x + y).cos());
        let d = frac_deriv_x(&f, 0.5).unwrap();
        assert!(close(&d, &f.scale(2.0), 1e-13));
        let c2 = Field::from_fn(&g, |x, _| (2.0 * x).cos());
        assert!(close(&frac_deriv_x(&c2, 1.0).unwrap(), &c2.scale(2.0), 1e-13));
        let mixed = Field::from_fn(&g, |x, y| 1.0 + y.sin() + x.cos());
        let p = frac_deriv_x(&mixed, 0.0).unwrap();
        assert!(close(&p, &Field::from_fn(&g, |x, _| x.cos()), 1e-13));
        assert!(frac_deriv_x(&f, 2.5).is_err());
    }

    #[test]
    fn derivative_of_sine() {
        let g = g();
        let s = Field::from_fn(&g, |x, _| x.sin());
        assert!(close(&deriv_x(&s), &Field::from_fn(&g, |x, _| x.cos()), 1e-13));
    }

    #[test]
    fn bessel_examples() {
        let g = g();
        let f = Field::from_fn(&g, |x, y| x.cos() + (2.0 * y).sin());
        assert!(close(&bessel(&f, 0.0, 0.0), &f, 1e-14));
        let e = Field::from_fn(&g, |x, _| x.cos());
        assert!(close(&bessel(&e, 2.0, 0.0), &e.scale(2.0), 1e-13));
        let back = bessel(&bessel(&f, -1.3, 0.7), 1.3, -0.7);
        assert!(close(&back, &f, 1e-13));
    }

    #[test]
    fn inverse_x_derivative() {
        let g = g();
        let s = Field::from_fn(&g, |x, _| x.sin());
        assert!(close(&inv_dx(&s).unwrap(), &Field::from_fn(&g, |x, _| -x.cos()), 1e-13));
        let k = Field::from_fn(&g, |_, _| 1.0);
        assert!(matches!(inv_dx(&k), Err(Error::NonzeroXMean { .. })));
        let f = Field::from_fn(&g, |x, y| (x + y).sin() * (2.0 * x).cos());
        assert!(close(&deriv_x(&inv_dx(&f).unwrap()), &f, 1e-12));
        let h = Field::from_fn(&g, |x, y| (x + 2.0 * y).cos());
        let w = inv_dx_dy(&h).unwrap();
        assert!(close(&w, &h.scale(2.0), 1e-13));
    }

    #[test]
    fn smoothing_identity_and_contraction() {
        let g = g();
        let f = Field::from_fn(&g, |x, y| (3.0 * x).sin() + (5.0 * y).cos());
        let p0 = SmoothingParams::new(0.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(bona_smith_smooth(&f, &p0), f);
        let p = SmoothingParams::new(0.1, 0.0, 1.0, 1.0).unwrap();
        assert!(bona_smith_smooth(&f, &p).l2_norm() < f.l2_norm());
        assert!(SmoothingParams::new(0.1, 0.2, 1.0, 1.0).is_err());
        assert!(SmoothingParams::new(0.1, 0.0, 0.0, 1.0).is_err());
    }
}
