use num_complex::Complex64;

use super::stepper::nonlinear_term;
use crate::propagator::{apply_group, DispersionSpec};
use crate::spectral_core::Field;
use crate::{Error, Result};

fn simpson_weights(q: usize, h: f64) -> Vec<f64> {
    (0..=q)
        .map(|i| {
            let w = if i == 0 || i == q {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w * h / 3.0
        })
        .collect()
}

fn iterate(psi: &Field, k: usize, t: f64, spec: &DispersionSpec, q: usize) -> Field {
    let free = apply_group(psi, t, spec).to_spectral();
    if k == 0 || t == 0.0 {
        return free;
    }
    let h = t / q as f64;
    let w = simpson_weights(q, h);
    let mut acc = free.into_spectral_values();
    for (i, wi) in w.iter().enumerate() {
        let s = i as f64 * h;
        let prev = iterate(psi, k - 1, s, spec, q);
        let n = apply_group(&nonlinear_term(&prev), t - s, spec);
        for (a, b) in acc.iter_mut().zip(n.spectral_values().iter()) {
            *a += b * Complex64::new(*wi, 0.0);
        }
    }
    Field::from_spectral(psi.grid(), acc).expect("sizes match")
}

/// `u^(n)(t)` of the Duhamel iteration `u^(k+1)(t) = W(t) psi + ∫_0^t W(t - s)(u^(k) u^(k)_x)(s) ds`,
/// with the time integral done by composite Simpson on `quad_steps` intervals.
pub fn picard_iterate(
    psi: &Field,
    n: usize,
    t: f64,
    spec: &DispersionSpec,
    quad_steps: usize,
) -> Result<Field> {
    if n > 3 {
        return Err(Error::InvalidArgument(format!("picard depth {n} > 3")));
    }
    if quad_steps < 16 || quad_steps % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "quad_steps must be even and >= 16, got {quad_steps}"
        )));
    }
    let out = iterate(psi, n, t, spec, quad_steps);
    Ok(if psi.is_physical() { out.to_physical() } else { out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::SpectralGrid;
    use std::f64::consts::PI;

    #[test]
    fn depth_zero_is_free_flow() {
        let g = SpectralGrid::new(16, 16, 2.0 * PI, 2.0 * PI).unwrap();
        let psi = Field::from_fn(&g, |x, y| (x + y).sin());
        let spec = DispersionSpec { alpha: 1.0 };
        let p = picard_iterate(&psi, 0, 0.7, &spec, 16).unwrap();
        let w = apply_group(&psi, 0.7, &spec);
        assert!(p.sub(&w).unwrap().l2_norm() < 1e-14);
        assert!(picard_iterate(&psi, 4, 0.7, &spec, 16).is_err());
        assert!(picard_iterate(&psi, 1, 0.7, &spec, 15).is_err());
    }
}
