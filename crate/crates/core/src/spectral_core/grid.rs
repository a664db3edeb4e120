use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::{Error, Result};

struct Inner {
    nx: usize,
    ny: usize,
    lx: f64,
    ly: f64,
    kx: Vec<f64>,
    ky: Vec<f64>,
    fwd_x: Arc<dyn Fft<f64>>,
    inv_x: Arc<dyn Fft<f64>>,
    fwd_y: Arc<dyn Fft<f64>>,
    inv_y: Arc<dyn Fft<f64>>,
}

/// Uniform periodic grid on `[0, lx) x [0, ly)` together with its FFT plans.
///
/// Cloning is cheap; clones share plans and frequency tables.
#[derive(Clone)]
pub struct SpectralGrid(Arc<Inner>);

/// Signed lattice index in `(-n/2, n/2]`.
pub fn wrap(j: usize, n: usize) -> i64 {
    if j <= n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

impl SpectralGrid {
    pub fn new(nx: usize, ny: usize, lx: f64, ly: f64) -> Result<Self> {
        if nx % 2 != 0 || ny % 2 != 0 {
            return Err(Error::InvalidGrid(format!("sizes must be even, got {nx}x{ny}")));
        }
        if nx < 4 || ny < 4 {
            return Err(Error::InvalidGrid(format!("sizes must be at least 4, got {nx}x{ny}")));
        }
        if !(lx > 0.0 && ly > 0.0 && lx.is_finite() && ly.is_finite()) {
            return Err(Error::InvalidGrid(format!("lengths must be positive, got {lx}, {ly}")));
        }
        let kx = (0..nx).map(|j| 2.0 * PI * wrap(j, nx) as f64 / lx).collect();
        let ky = (0..ny).map(|m| 2.0 * PI * wrap(m, ny) as f64 / ly).collect();
        let mut planner = FftPlanner::new();
        Ok(Self(Arc::new(Inner {
            nx,
            ny,
            lx,
            ly,
            kx,
            ky,
            fwd_x: planner.plan_fft_forward(nx),
            inv_x: planner.plan_fft_inverse(nx),
            fwd_y: planner.plan_fft_forward(ny),
            inv_y: planner.plan_fft_inverse(ny),
        })))
    }

    pub fn nx(&self) -> usize {
        self.0.nx
    }
    pub fn ny(&self) -> usize {
        self.0.ny
    }
    pub fn lx(&self) -> f64 {
        self.0.lx
    }
    pub fn ly(&self) -> f64 {
        self.0.ly
    }
    pub fn len(&self) -> usize {
        self.0.nx * self.0.ny
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn dx(&self) -> f64 {
        self.0.lx / self.0.nx as f64
    }
    pub fn dy(&self) -> f64 {
        self.0.ly / self.0.ny as f64
    }
    /// Quadrature weight of one sample.
    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }
    pub fn area(&self) -> f64 {
        self.0.lx * self.0.ly
    }
    pub fn kx(&self) -> &[f64] {
        &self.0.kx
    }
    pub fn ky(&self) -> &[f64] {
        &self.0.ky
    }
    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.dx()
    }
    pub fn y(&self, m: usize) -> f64 {
        m as f64 * self.dy()
    }
    /// Largest |kx| on the lattice (the Nyquist frequency).
    pub fn kx_max(&self) -> f64 {
        PI * self.0.nx as f64 / self.0.lx
    }
    pub fn ky_max(&self) -> f64 {
        PI * self.0.ny as f64 / self.0.ly
    }
    pub fn is_nyquist_x(&self, j: usize) -> bool {
        j == self.0.nx / 2
    }
    pub fn is_nyquist_y(&self, m: usize) -> bool {
        m == self.0.ny / 2
    }
    /// Index of the lattice point `-k`.
    pub fn mirror(&self, j: usize, m: usize) -> (usize, usize) {
        ((self.0.nx - j) % self.0.nx, (self.0.ny - m) % self.0.ny)
    }

    pub fn same_as(&self, other: &SpectralGrid) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.nx() == other.nx()
                && self.ny() == other.ny()
                && self.lx() == other.lx()
                && self.ly() == other.ly())
    }

    /// Unnormalized 2-D DFT in place (row-major, y outer).
    pub(crate) fn fft2(&self, data: &mut [Complex64], inverse: bool) {
        let (nx, ny) = (self.nx(), self.ny());
        debug_assert_eq!(data.len(), nx * ny);
        let (fx, fy) = if inverse {
            (&self.0.inv_x, &self.0.inv_y)
        } else {
            (&self.0.fwd_x, &self.0.fwd_y)
        };
        let mut scratch =
            vec![Complex64::default(); fx.get_inplace_scratch_len().max(fy.get_inplace_scratch_len())];
        fx.process_with_scratch(data, &mut scratch);
        let mut t = vec![Complex64::default(); nx * ny];
        transpose(data, &mut t, nx, ny);
        fy.process_with_scratch(&mut t, &mut scratch);
        transpose(&t, data, ny, nx);
    }
}

/// `src` has `rows` rows of length `cols`.
fn transpose(src: &[Complex64], dst: &mut [Complex64], cols: usize, rows: usize) {
    const B: usize = 32;
    for r0 in (0..rows).step_by(B) {
        for c0 in (0..cols).step_by(B) {
            for r in r0..(r0 + B).min(rows) {
                for c in c0..(c0 + B).min(cols) {
                    dst[c * rows + r] = src[r * cols + c];
                }
            }
        }
    }
}

impl fmt::Debug for SpectralGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralGrid")
            .field("nx", &self.nx())
            .field("ny", &self.ny())
            .field("lx", &self.lx())
            .field("ly", &self.ly())
            .finish()
    }
}

impl PartialEq for SpectralGrid {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_examples() {
        let g = SpectralGrid::new(8, 8, 2.0 * PI, 2.0 * PI).unwrap();
        let want = [0.0, 1.0, 2.0, 3.0, 4.0, -3.0, -2.0, -1.0];
        for (a, b) in g.kx().iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
        let g = SpectralGrid::new(4, 4, PI, PI).unwrap();
        for (a, b) in g.kx().iter().zip([0.0, 2.0, 4.0, -2.0]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(SpectralGrid::new(7, 8, 1.0, 1.0).is_err());
        assert!(SpectralGrid::new(2, 8, 1.0, 1.0).is_err());
        assert!(SpectralGrid::new(8, 8, 0.0, 1.0).is_err());
        assert!(SpectralGrid::new(8, 8, 1.0, -1.0).is_err());
    }

    #[test]
    fn mirror_is_involution() {
        let g = SpectralGrid::new(6, 4, 1.0, 1.0).unwrap();
        for j in 0..6 {
            for m in 0..4 {
                let (a, b) = g.mirror(j, m);
                assert_eq!(g.mirror(a, b), (j, m));
            }
        }
    }
}
