use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::phi::{BoxModes, SparseSpectrum};
use crate::spectral_core::japanese;
use crate::{Error, Result};

/// A lattice Fourier mode: integer position `(ix, iy)`, frequency `(xi, eta)`, coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub ix: i64,
    pub iy: i64,
    pub xi: f64,
    pub eta: f64,
    pub amp: Complex64,
}

fn dispersion(xi: f64, eta: f64, alpha: f64) -> f64 {
    if xi == 0.0 {
        0.0
    } else {
        xi.powi(3) + xi.signum() * xi.abs().powf(alpha) * eta * eta
    }
}

fn simpson(q: usize, t: f64) -> Vec<f64> {
    let h = t / q as f64;
    (0..=q)
        .map(|i| {
            let w = if i == 0 || i == q { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            w * h / 3.0
        })
        .collect()
}

/// Output modes `p = a + b` of `∫_0^t W(t - s) ∂_x (u_a u_b)(s) ds` with `u_a = W(s) a`,
/// `u_b = W(s) b`, in Fourier-series coefficients. Both orderings of the pair are
/// included, so for disjoint `a` and `b` this is the mixed part of the first Picard
/// correction. The time integral is composite Simpson on `quad_steps` intervals.
pub fn duhamel_lattice(a: &[Mode], b: &[Mode], t: f64, alpha: f64, quad_steps: usize) -> Result<Vec<Mode>> {
    if quad_steps < 2 || quad_steps % 2 != 0 {
        return Err(Error::InvalidArgument(format!("quad_steps must be even, got {quad_steps}")));
    }
    let w = simpson(quad_steps, t);
    let h = t / quad_steps as f64;
    // W(s) applied to one mode, optionally folded with the quadrature weights
    let free = |m: &Mode, weighted: bool| -> Vec<Complex64> {
        let th = dispersion(m.xi, m.eta, alpha);
        (0..=quad_steps)
            .map(|i| m.amp * Complex64::from_polar(if weighted { w[i] } else { 1.0 }, -(i as f64 * h) * th))
            .collect()
    };
    let fa: Vec<Vec<Complex64>> = a.iter().map(|m| free(m, true)).collect();
    let fb: Vec<Vec<Complex64>> = b.iter().map(|m| free(m, false)).collect();
    let mut out: HashMap<(i64, i64), (f64, f64, Vec<Complex64>)> = HashMap::new();
    for (ma, ta) in a.iter().zip(&fa) {
        for (mb, tb) in b.iter().zip(&fb) {
            let e = out.entry((ma.ix + mb.ix, ma.iy + mb.iy)).or_insert_with(|| {
                (ma.xi + mb.xi, ma.eta + mb.eta, vec![Complex64::new(0.0, 0.0); quad_steps + 1])
            });
            for ((acc, x), y) in e.2.iter_mut().zip(ta).zip(tb) {
                *acc += x * y;
            }
        }
    }
    let mut res: Vec<Mode> = out
        .into_iter()
        .map(|((ix, iy), (xi, eta, s))| {
            let th = dispersion(xi, eta, alpha);
            let v: Complex64 = s
                .iter()
                .enumerate()
                .map(|(i, z)| z * Complex64::from_polar(1.0, -(t - i as f64 * h) * th))
                .sum();
            // d_x (u_a u_b + u_b u_a) / 2
            Mode { ix, iy, xi, eta, amp: Complex64::new(0.0, xi) * v }
        })
        .collect();
    res.sort_by_key(|m| (m.iy, m.ix));
    Ok(res)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeF3 {
    /// `(xi, eta - anchor, Re f3^, Im f3^)` on the output lattice
    pub points: Vec<(f64, f64, f64, f64)>,
    pub eta_anchor: f64,
    pub norm: f64,
    pub pairs: usize,
}

fn modes(b: &BoxModes, s: &SparseSpectrum) -> Vec<Mode> {
    b.indices()
        .map(|(ix, iy)| Mode {
            ix,
            iy,
            xi: ix as f64 * s.lattice.dkx,
            eta: b.snapped.eta_anchor + iy as f64 * s.lattice.dky,
            amp: Complex64::new(b.amp, 0.0),
        })
        .collect()
}

/// Time-domain route to `f3^`: the mixed Picard correction of the sampled data, converted
/// to the unitary transform scale, with its lattice `H^{s1,s2}` norm.
pub fn lattice_f3(
    phi: &SparseSpectrum,
    alpha: f64,
    t: f64,
    s: (f64, f64),
    quad_steps: usize,
) -> Result<LatticeF3> {
    let (m1, m2) = (modes(&phi.d1, phi), modes(&phi.d2, phi));
    let cell = phi.lattice.dkx * phi.lattice.dky;
    let out = duhamel_lattice(&m2, &m1, t, alpha, quad_steps)?;
    let anchor = phi.d1.snapped.eta_anchor + phi.d2.snapped.eta_anchor;
    let mut n2 = 0.0;
    let points = out
        .iter()
        .map(|m| {
            let f = m.amp * (cell / (2.0 * PI));
            let wt = japanese(m.xi).powf(2.0 * s.0) + japanese(m.eta).powf(2.0 * s.1);
            n2 += wt * f.norm_sqr() * cell;
            (m.xi, m.iy as f64 * phi.lattice.dky, f.re, f.im)
        })
        .collect();
    Ok(LatticeF3 { points, eta_anchor: anchor, norm: n2.sqrt(), pairs: m1.len() * m2.len() })
}
