use std::borrow::Cow;

use num_complex::Complex64;

use super::grid::SpectralGrid;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Repr {
    /// Real samples, row-major with y outer.
    Physical(Vec<f64>),
    /// Fourier-series coefficients `c_k`, so that `u(x) = sum_k c_k e^{i k.x}`.
    Spectral(Vec<Complex64>),
}

/// A real scalar field on a periodic grid, held in one of two representations.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: SpectralGrid,
    repr: Repr,
}

impl Field {
    pub fn from_physical(grid: &SpectralGrid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            )));
        }
        Ok(Self { grid: grid.clone(), repr: Repr::Physical(samples) })
    }

    pub fn from_spectral(grid: &SpectralGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                grid.len(),
                coeffs.len()
            )));
        }
        Ok(Self { grid: grid.clone(), repr: Repr::Spectral(coeffs) })
    }

    pub fn from_fn(grid: &SpectralGrid, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut v = Vec::with_capacity(grid.len());
        for m in 0..grid.ny() {
            let y = grid.y(m);
            for j in 0..grid.nx() {
                v.push(f(grid.x(j), y));
            }
        }
        Self { grid: grid.clone(), repr: Repr::Physical(v) }
    }

    pub fn zeros(grid: &SpectralGrid) -> Self {
        Self { grid: grid.clone(), repr: Repr::Physical(vec![0.0; grid.len()]) }
    }

    pub fn grid(&self) -> &SpectralGrid {
        &self.grid
    }
    pub fn repr(&self) -> &Repr {
        &self.repr
    }
    pub fn is_physical(&self) -> bool {
        matches!(self.repr, Repr::Physical(_))
    }
    pub fn is_spectral(&self) -> bool {
        matches!(self.repr, Repr::Spectral(_))
    }

    pub fn forward(&self) -> Result<Field> {
        match &self.repr {
            Repr::Physical(u) => Ok(Self {
                grid: self.grid.clone(),
                repr: Repr::Spectral(forward_raw(&self.grid, u)),
            }),
            Repr::Spectral(_) => Err(Error::RepresentationMismatch { expected: "physical" }),
        }
    }

    pub fn inverse(&self) -> Result<Field> {
        match &self.repr {
            Repr::Spectral(c) => Ok(Self {
                grid: self.grid.clone(),
                repr: Repr::Physical(inverse_raw(&self.grid, c)),
            }),
            Repr::Physical(_) => Err(Error::RepresentationMismatch { expected: "spectral" }),
        }
    }

    pub fn to_spectral(&self) -> Field {
        match self.repr {
            Repr::Spectral(_) => self.clone(),
            Repr::Physical(_) => self.forward().expect("physical"),
        }
    }

    pub fn to_physical(&self) -> Field {
        match self.repr {
            Repr::Physical(_) => self.clone(),
            Repr::Spectral(_) => self.inverse().expect("spectral"),
        }
    }

    pub fn samples(&self) -> Result<&[f64]> {
        match &self.repr {
            Repr::Physical(u) => Ok(u),
            Repr::Spectral(_) => Err(Error::RepresentationMismatch { expected: "physical" }),
        }
    }

    pub fn coeffs(&self) -> Result<&[Complex64]> {
        match &self.repr {
            Repr::Spectral(c) => Ok(c),
            Repr::Physical(_) => Err(Error::RepresentationMismatch { expected: "spectral" }),
        }
    }

    pub fn physical_values(&self) -> Cow<'_, [f64]> {
        match &self.repr {
            Repr::Physical(u) => Cow::Borrowed(u),
            Repr::Spectral(c) => Cow::Owned(inverse_raw(&self.grid, c)),
        }
    }

    pub fn spectral_values(&self) -> Cow<'_, [Complex64]> {
        match &self.repr {
            Repr::Spectral(c) => Cow::Borrowed(c),
            Repr::Physical(u) => Cow::Owned(forward_raw(&self.grid, u)),
        }
    }

    pub fn into_spectral_values(self) -> Vec<Complex64> {
        match self.repr {
            Repr::Spectral(c) => c,
            Repr::Physical(u) => forward_raw(&self.grid, &u),
        }
    }

    pub fn into_physical_values(self) -> Vec<f64> {
        match self.repr {
            Repr::Physical(u) => u,
            Repr::Spectral(c) => inverse_raw(&self.grid, &c),
        }
    }

    /// L2 norm as the grid Riemann sum (equal, by Parseval, to the spectral sum).
    pub fn l2_norm(&self) -> f64 {
        match &self.repr {
            Repr::Physical(u) => {
                (u.iter().map(|v| v * v).sum::<f64>() * self.grid.cell_area()).sqrt()
            }
            Repr::Spectral(c) => (c.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.area()).sqrt(),
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.physical_values().iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// Integral of the field over the box.
    pub fn mass(&self) -> f64 {
        match &self.repr {
            Repr::Physical(u) => u.iter().sum::<f64>() * self.grid.cell_area(),
            Repr::Spectral(c) => c[0].re * self.grid.area(),
        }
    }

    /// Largest `|c(-k) - conj(c(k))|` relative to the largest coefficient.
    pub fn hermitian_defect(&self) -> f64 {
        let c = self.spectral_values();
        let (nx, ny) = (self.grid.nx(), self.grid.ny());
        let scale = c.iter().fold(0.0f64, |a, v| a.max(v.norm()));
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0f64;
        for m in 0..ny {
            for j in 0..nx {
                let (jm, mm) = self.grid.mirror(j, m);
                worst = worst.max((c[mm * nx + jm] - c[m * nx + j].conj()).norm());
            }
        }
        worst / scale
    }

    /// Trigonometric interpolant at an arbitrary point.
    pub fn eval_at(&self, x: f64, y: f64) -> f64 {
        let c = self.spectral_values();
        let (nx, ny) = (self.grid.nx(), self.grid.ny());
        let ex: Vec<Complex64> = self.grid.kx().iter().map(|k| Complex64::cis(k * x)).collect();
        let mut total = Complex64::default();
        for m in 0..ny {
            if self.grid.is_nyquist_y(m) {
                continue;
            }
            let row = &c[m * nx..(m + 1) * nx];
            let mut s = Complex64::default();
            for j in 0..nx {
                if !self.grid.is_nyquist_x(j) {
                    s += row[j] * ex[j];
                }
            }
            total += s * Complex64::cis(self.grid.ky()[m] * y);
        }
        total.re
    }

    pub fn scale(&self, a: f64) -> Field {
        let repr = match &self.repr {
            Repr::Physical(u) => Repr::Physical(u.iter().map(|v| v * a).collect()),
            Repr::Spectral(c) => Repr::Spectral(c.iter().map(|v| v * a).collect()),
        };
        Self { grid: self.grid.clone(), repr }
    }

    /// `a * self + b * other`, in the representation of `self`.
    pub fn lin_comb(&self, a: f64, other: &Field, b: f64) -> Result<Field> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::GridMismatch);
        }
        let repr = match &self.repr {
            Repr::Physical(u) => {
                let v = other.physical_values();
                Repr::Physical(u.iter().zip(v.iter()).map(|(p, q)| a * p + b * q).collect())
            }
            Repr::Spectral(c) => {
                let d = other.spectral_values();
                Repr::Spectral(c.iter().zip(d.iter()).map(|(p, q)| p * a + q * b).collect())
            }
        };
        Ok(Self { grid: self.grid.clone(), repr })
    }

    pub fn sub(&self, other: &Field) -> Result<Field> {
        self.lin_comb(1.0, other, -1.0)
    }

    pub fn add(&self, other: &Field) -> Result<Field> {
        self.lin_comb(1.0, other, 1.0)
    }
}

pub(crate) fn forward_raw(grid: &SpectralGrid, u: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = u.iter().map(|v| Complex64::new(*v, 0.0)).collect();
    grid.fft2(&mut buf, false);
    let s = 1.0 / grid.len() as f64;
    for v in &mut buf {
        *v *= s;
    }
    buf
}

pub(crate) fn inverse_raw(grid: &SpectralGrid, c: &[Complex64]) -> Vec<f64> {
    let mut buf = c.to_vec();
    grid.fft2(&mut buf, true);
    buf.into_iter().map(|v| v.re).collect()
}

/// Inverse transform keeping the imaginary part, used to pack two real
/// fields into one transform.
pub(crate) fn inverse_complex(grid: &SpectralGrid, c: &mut [Complex64]) {
    grid.fft2(c, true);
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid() -> SpectralGrid {
        SpectralGrid::new(16, 8, 2.0 * PI, 2.0 * PI).unwrap()
    }

    #[test]
    fn sine_is_single_pair() {
        let g = grid();
        let f = Field::from_fn(&g, |x, _| x.sin()).forward().unwrap();
        let c = f.coeffs().unwrap();
        for (i, v) in c.iter().enumerate() {
            if i == 1 {
                assert!((v - Complex64::new(0.0, -0.5)).norm() < 1e-15);
            } else if i == 15 {
                assert!((v - Complex64::new(0.0, 0.5)).norm() < 1e-15);
            } else {
                assert!(v.norm() < 1e-15, "{i} {v}");
            }
        }
    }

    #[test]
    fn representation_mismatch() {
        let g = grid();
        let f = Field::zeros(&g);
        assert!(matches!(f.inverse(), Err(Error::RepresentationMismatch { .. })));
        let s = f.forward().unwrap();
        assert!(matches!(s.forward(), Err(Error::RepresentationMismatch { .. })));
    }

    #[test]
    fn interpolation_hits_samples_and_between() {
        let g = grid();
        let f = Field::from_fn(&g, |x, y| (2.0 * x).cos() * (y - 0.3).sin());
        let v = f.eval_at(0.123, 1.7);
        assert!((v - (0.246f64).cos() * (1.4f64).sin()).abs() < 1e-13);
    }

    #[test]
    fn mass_both_ways() {
        let g = grid();
        let f = Field::from_fn(&g, |x, y| 1.5 + x.cos() * y.sin());
        let want = 1.5 * 4.0 * PI * PI;
        assert!((f.mass() - want).abs() < 1e-12);
        assert!((f.to_spectral().mass() - want).abs() < 1e-12);
    }
}
