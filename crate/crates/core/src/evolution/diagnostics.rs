use num_complex::Complex64;
use serde::Serialize;

use crate::propagator::DispersionSpec;
use crate::spectral_core::{inverse_raw, Field};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostics {
    pub step: usize,
    pub t: f64,
    pub l2: f64,
    pub mass: f64,
    pub hamiltonian: f64,
    pub sup_u: f64,
    pub sup_ux: f64,
    pub sup_uy: f64,
}

/// `H(u) = ∫ -u_x^2/2 - (D_x^{(alpha-1)/2} u_y)^2/2 + u^3/6`.
///
/// The quadratic parts are exact spectral sums; the cubic part is the grid
/// quadrature of `u^3`.
pub fn hamiltonian(u: &Field, spec: &DispersionSpec) -> f64 {
    let g = u.grid();
    let c = u.spectral_values();
    let nx = g.nx();
    let mut quad = 0.0;
    for m in 0..g.ny() {
        let ky = g.ky()[m];
        for j in 0..nx {
            let kx = g.kx()[j];
            if kx == 0.0 {
                continue;
            }
            let w = kx * kx + kx.abs().powf(spec.alpha - 1.0) * ky * ky;
            quad += w * c[m * nx + j].norm_sqr();
        }
    }
    let v = u.physical_values();
    let cubic: f64 = v.iter().map(|s| s * s * s).sum::<f64>() * g.cell_area();
    -0.5 * quad * g.area() + cubic / 6.0
}

pub fn diagnostics(u: &Field, spec: &DispersionSpec, step: usize, t: f64) -> Diagnostics {
    let g = u.grid();
    let c = u.spectral_values();
    let nx = g.nx();
    // u_x in the real part and u_y in the imaginary part of one inverse transform
    let mut packed = vec![Complex64::default(); c.len()];
    for m in 0..g.ny() {
        for j in 0..nx {
            let i = m * nx + j;
            let dx = if g.is_nyquist_x(j) { 0.0 } else { g.kx()[j] };
            let dy = if g.is_nyquist_y(m) { 0.0 } else { g.ky()[m] };
            packed[i] = c[i] * Complex64::new(-dy, dx);
        }
    }
    let mut buf = packed;
    crate::spectral_core::inverse_complex(g, &mut buf);
    let (mut sx, mut sy) = (0.0f64, 0.0f64);
    for v in &buf {
        sx = sx.max(v.re.abs());
        sy = sy.max(v.im.abs());
    }
    let phys = match u.is_physical() {
        true => u.physical_values().into_owned(),
        false => inverse_raw(g, &c),
    };
    let sup_u = phys.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    Diagnostics {
        step,
        t,
        l2: u.l2_norm(),
        mass: u.mass(),
        hamiltonian: hamiltonian(u, spec),
        sup_u,
        sup_ux: sx,
        sup_uy: sy,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::{deriv_x, deriv_y, MultiplierSpec, SpectralGrid};
    use std::f64::consts::PI;

    #[test]
    fn hilbert_fractional_identity_on_lattice() {
        // H D^alpha = -∂_x D^{alpha - 1}, which makes H(u) the conserved functional
        let g = SpectralGrid::new(16, 8, 2.0 * PI, 3.0).unwrap();
        for a in [-1.0, -0.4, 0.0, 0.7, 1.0] {
            let lhs = MultiplierSpec::hilbert_x().then(&MultiplierSpec::frac_x(a)).table(&g).unwrap();
            let rhs = MultiplierSpec::deriv_x().then(&MultiplierSpec::frac_x(a - 1.0)).table(&g).unwrap();
            for (l, r) in lhs.iter().zip(&rhs) {
                assert!((l + r).norm() < 1e-13 * l.norm().max(1.0));
            }
        }
    }

    #[test]
    fn packed_derivatives() {
        let g = SpectralGrid::new(32, 32, 2.0 * PI, 2.0 * PI).unwrap();
        let u = Field::from_fn(&g, |x, y| (x + 2.0 * y).sin() + 0.3 * (3.0 * x).cos());
        let d = diagnostics(&u, &DispersionSpec { alpha: 1.0 }, 0, 0.0);
        assert!((d.sup_ux - deriv_x(&u).sup_norm()).abs() < 1e-12);
        assert!((d.sup_uy - deriv_y(&u).sup_norm()).abs() < 1e-12);
        assert!((d.l2 - u.l2_norm()).abs() < 1e-14);
    }

    #[test]
    fn hamiltonian_of_single_mode() {
        let g = SpectralGrid::new(16, 16, 2.0 * PI, 2.0 * PI).unwrap();
        let u = Field::from_fn(&g, |x, y| (2.0 * x + y).cos());
        // ∫ u_x^2 = 4 * 2 pi^2, ∫ (D^{(a-1)/2} u_y)^2 = 2^{a-1} * 2 pi^2, ∫ u^3 = 0
        let a = 0.5;
        let want = -0.5 * (4.0 + 2f64.powf(a - 1.0)) * 2.0 * PI * PI;
        assert!((hamiltonian(&u, &DispersionSpec { alpha: a }) - want).abs() < 1e-11);
    }
}
