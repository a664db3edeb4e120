use std::f64::consts::PI;
use std::path::PathBuf;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::illposed::FrequencyBox;
use crate::spectral_core::{read_snapshot, wrap, Field, SpectralGrid};
use crate::{Error, Result};

fn d_zero_slope() -> f64 {
    0.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DataSpec {
    /// `a exp(-(x-cx)^2/2sx^2 - (y-cy)^2/2sy^2)`; with `zero_x_mean` multiplied by
    /// `-(x-cx)/sx`, which removes the `kx = 0` plane.
    Gaussian {
        amplitude: f64,
        sigma: [f64; 2],
        #[serde(default)]
        center: Option<[f64; 2]>,
        #[serde(default)]
        zero_x_mean: bool,
    },
    /// Normal random coefficients on `|k| <= band`, spectrum `|k|^{-slope}`, scaled to RMS `amplitude`.
    Noise {
        amplitude: f64,
        band: f64,
        #[serde(default = "d_zero_slope")]
        slope: f64,
        #[serde(default)]
        zero_x_mean: bool,
    },
    /// Indicator spectra (unitary transform scale) placed on the lattice with their mirror images.
    Boxes { boxes: Vec<FrequencyBox>, amplitudes: Vec<f64> },
    File { path: PathBuf },
}

pub fn gen_data(spec: &DataSpec, grid: &SpectralGrid, seed: u64) -> Result<Field> {
    match spec {
        DataSpec::Gaussian { amplitude, sigma, center, zero_x_mean } => {
            if !(sigma[0] > 0.0 && sigma[1] > 0.0) {
                return Err(Error::InvalidArgument("gaussian widths must be positive".into()));
            }
            let [cx, cy] = center.unwrap_or([0.5 * grid.lx(), 0.5 * grid.ly()]);
            let (a, [sx, sy], zm) = (*amplitude, *sigma, *zero_x_mean);
            let f = Field::from_fn(grid, |x, y| {
                let g = a * (-(x - cx).powi(2) / (2.0 * sx * sx) - (y - cy).powi(2) / (2.0 * sy * sy)).exp();
                if zm {
                    -g * (x - cx) / sx
                } else {
                    g
                }
            });
            if zm {
                Ok(clear_x_mean(&f))
            } else {
                Ok(f)
            }
        }
        DataSpec::Noise { amplitude, band, slope, zero_x_mean } => noise(grid, *amplitude, *band, *slope, *zero_x_mean, seed),
        DataSpec::Boxes { boxes, amplitudes } => place_boxes(grid, boxes, amplitudes),
        DataSpec::File { path } => read_snapshot(path),
    }
}

/// Removes the `kx = 0` plane (round-off of the zero-x-mean Gaussian).
fn clear_x_mean(f: &Field) -> Field {
    let g = f.grid();
    let mut c = f.spectral_values().into_owned();
    for m in 0..g.ny() {
        c[m * g.nx()] = Complex64::default();
    }
    Field::from_spectral(g, c).expect("same grid").to_physical()
}

fn noise(grid: &SpectralGrid, amplitude: f64, band: f64, slope: f64, zero_x_mean: bool, seed: u64) -> Result<Field> {
    if !(band > 0.0) {
        return Err(Error::InvalidArgument("noise band must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (nx, ny) = (grid.nx(), grid.ny());
    let mut c = vec![Complex64::default(); grid.len()];
    // visit each conjugate pair once, in a fixed order
    for m in 0..ny {
        for j in 0..nx {
            let (jm, mm) = grid.mirror(j, m);
            if (mm, jm) < (m, j) || grid.is_nyquist_x(j) || grid.is_nyquist_y(m) {
                continue;
            }
            let (kx, ky) = (grid.kx()[j], grid.ky()[m]);
            let k = kx.hypot(ky);
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            if k > band || k == 0.0 || (zero_x_mean && kx == 0.0) {
                continue;
            }
            let w = k.powf(-slope);
            if (jm, mm) == (j, m) {
                c[m * nx + j] = Complex64::new(re * w, 0.0);
            } else {
                c[m * nx + j] = Complex64::new(re, im) * w;
                c[mm * nx + jm] = Complex64::new(re, -im) * w;
            }
        }
    }
    let f = Field::from_spectral(grid, c)?.to_physical();
    let rms = f.l2_norm() / grid.area().sqrt();
    if rms == 0.0 {
        return Err(Error::InvalidArgument(format!("band {band} contains no lattice modes")));
    }
    Ok(f.scale(amplitude / rms))
}

fn place_boxes(grid: &SpectralGrid, boxes: &[FrequencyBox], amps: &[f64]) -> Result<Field> {
    if boxes.len() != amps.len() {
        return Err(Error::InvalidArgument("one amplitude per box".into()));
    }
    let (nx, ny) = (grid.nx(), grid.ny());
    let dkx = 2.0 * PI / grid.lx();
    let dky = 2.0 * PI / grid.ly();
    let scale = 2.0 * PI / grid.area();
    let mut c = vec![Complex64::default(); grid.len()];
    for (b, a) in boxes.iter().zip(amps) {
        let lo_x = (b.xi_lo / dkx).ceil() as i64;
        let hi_x = (b.xi_hi / dkx).floor() as i64;
        let lo_y = ((b.eta_anchor + b.eta_lo) / dky).ceil() as i64;
        let hi_y = ((b.eta_anchor + b.eta_hi) / dky).floor() as i64;
        if hi_x - lo_x + 1 < 4 || hi_y - lo_y + 1 < 4 {
            return Err(Error::BoxUnresolvable(format!(
                "{} x {} lattice points",
                hi_x - lo_x + 1,
                hi_y - lo_y + 1
            )));
        }
        for iy in lo_y..=hi_y {
            for ix in lo_x..=hi_x {
                let (j, m) = (ix.rem_euclid(nx as i64) as usize, iy.rem_euclid(ny as i64) as usize);
                if wrap(j, nx) != ix || wrap(m, ny) != iy || grid.is_nyquist_x(j) || grid.is_nyquist_y(m) {
                    return Err(Error::InvalidArgument(format!("box mode ({ix}, {iy}) is outside the grid")));
                }
                let (jm, mm) = grid.mirror(j, m);
                c[m * nx + j] += a * scale;
                if (jm, mm) != (j, m) {
                    c[mm * nx + jm] += a * scale;
                }
            }
        }
    }
    Ok(Field::from_spectral(grid, c)?.to_physical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::inv_dx;

    fn g() -> SpectralGrid {
        SpectralGrid::new(64, 32, 20.0, 10.0).unwrap()
    }

    #[test]
    fn zero_amplitude_gaussian() {
        let f = gen_data(&DataSpec::Gaussian { amplitude: 0.0, sigma: [1.0, 1.0], center: None, zero_x_mean: false }, &g(), 0).unwrap();
        assert_eq!(f.sup_norm(), 0.0);
    }

    #[test]
    fn seeded_noise_is_reproducible() {
        let s = DataSpec::Noise { amplitude: 1.0, band: 3.0, slope: 0.0, zero_x_mean: true };
        let a = gen_data(&s, &g(), 9).unwrap();
        let b = gen_data(&s, &g(), 9).unwrap();
        let c = gen_data(&s, &g(), 10).unwrap();
        assert_eq!(a.samples().unwrap(), b.samples().unwrap());
        assert_ne!(a.samples().unwrap(), c.samples().unwrap());
        assert!(inv_dx(&a).is_ok());
        assert!(a.hermitian_defect() < 1e-14);
    }

    #[test]
    fn zero_mean_gaussian_passes_inv_dx() {
        let s = DataSpec::Gaussian { amplitude: 1.0, sigma: [1.0, 1.5], center: None, zero_x_mean: true };
        assert!(inv_dx(&gen_data(&s, &g(), 0).unwrap()).is_ok());
    }

    #[test]
    fn boxes_and_errors() {
        let grid = SpectralGrid::new(64, 64, 2.0 * PI * 8.0, 2.0 * PI * 8.0).unwrap();
        let b = FrequencyBox::new(0.5, 1.0, -0.25, 0.25, 0.0).unwrap();
        let f = gen_data(&DataSpec::Boxes { boxes: vec![b], amplitudes: vec![1.0] }, &grid, 0).unwrap();
        assert!(f.l2_norm() > 0.0 && f.hermitian_defect() < 1e-14);
        let tiny = FrequencyBox::new(0.5, 0.6, -0.25, 0.25, 0.0).unwrap();
        assert!(matches!(
            gen_data(&DataSpec::Boxes { boxes: vec![tiny], amplitudes: vec![1.0] }, &grid, 0),
            Err(Error::BoxUnresolvable(_))
        ));
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.fzk");
        std::fs::write(&p, b"nope").unwrap();
        assert!(matches!(gen_data(&DataSpec::File { path: p }, &grid, 0), Err(Error::Snapshot(_))));
    }
}
