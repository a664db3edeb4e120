use num_complex::Complex64;
use serde::Serialize;

use super::group::{phase_table, DispersionSpec};
use crate::spectral_core::{inverse_raw, Field, SpectralGrid};
use crate::{Error, Result};

/// Parameters of a dispersive-decay measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayProbe {
    pub alpha: f64,
    pub beta: f64,
    pub times: Vec<f64>,
    /// The datum is embedded in a box `pad` times larger in each direction
    /// before propagation.
    pub pad: usize,
    /// Reject (alpha, beta) outside the open strip `alpha/2 - 1 < beta < alpha/2`.
    pub strict: bool,
}

impl DecayProbe {
    pub fn new(spec: &DispersionSpec, beta: f64, times: Vec<f64>) -> Result<Self> {
        let p = Self { alpha: spec.alpha, beta, times, pad: 1, strict: false };
        p.validate()?;
        Ok(p)
    }

    pub fn with_pad(mut self, pad: usize) -> Self {
        self.pad = pad;
        self
    }

    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn hypothesis_holds(&self) -> bool {
        self.alpha / 2.0 - 1.0 < self.beta && self.beta < self.alpha / 2.0
    }

    /// Exponent in `|t|^{-(5 + 2 beta - alpha)/6}`.
    pub fn predicted_slope(&self) -> f64 {
        -(5.0 + 2.0 * self.beta - self.alpha) / 6.0
    }

    pub fn validate(&self) -> Result<()> {
        if self.times.is_empty() {
            return Err(Error::InvalidArgument("no decay times".into()));
        }
        if self.times.iter().any(|t| !(*t >= 0.0)) || self.times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("decay times must be nonnegative and increasing".into()));
        }
        if self.pad == 0 {
            return Err(Error::InvalidArgument("pad factor must be at least 1".into()));
        }
        if !(-2.0..=2.0).contains(&self.beta) {
            return Err(Error::InvalidArgument(format!("beta = {} outside [-2, 2]", self.beta)));
        }
        if self.strict && !self.hypothesis_holds() {
            return Err(Error::HypothesisViolation { alpha: self.alpha, beta: self.beta });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecaySeries {
    pub times: Vec<f64>,
    pub sup: Vec<f64>,
    pub hypothesis_holds: bool,
    /// `3 kmax^2 t_max`
    pub reach: f64,
    /// half the propagation box minus the seam margin
    pub limit: f64,
    pub kmax: f64,
    pub pad: usize,
}

/// Largest |kx| or |ky| among coefficients above `rel` times the peak coefficient.
pub fn spectral_extent(f: &Field, rel: f64) -> f64 {
    let c = f.spectral_values();
    let g = f.grid();
    let peak = c.iter().fold(0.0f64, |a, v| a.max(v.norm()));
    let mut kmax = 0.0f64;
    for m in 0..g.ny() {
        if g.is_nyquist_y(m) {
            continue;
        }
        for j in 0..g.nx() {
            if g.is_nyquist_x(j) {
                continue;
            }
            if c[m * g.nx() + j].norm() > rel * peak {
                kmax = kmax.max(g.kx()[j].abs()).max(g.ky()[m].abs());
            }
        }
    }
    kmax
}

/// Zero-extends a field into a box `pad` times larger, keeping it centred.
pub fn embed_padded(f: &Field, pad: usize) -> Result<Field> {
    if pad == 1 {
        return Ok(f.to_physical());
    }
    let g = f.grid();
    let big = SpectralGrid::new(pad * g.nx(), pad * g.ny(), pad as f64 * g.lx(), pad as f64 * g.ly())?;
    let (ox, oy) = ((pad - 1) * g.nx() / 2, (pad - 1) * g.ny() / 2);
    let src = f.physical_values();
    let mut out = vec![0.0; big.len()];
    for m in 0..g.ny() {
        let row = (m + oy) * big.nx() + ox;
        out[row..row + g.nx()].copy_from_slice(&src[m * g.nx()..(m + 1) * g.nx()]);
    }
    Field::from_physical(&big, out)
}

fn check_localized(f: &Field) -> Result<()> {
    let g = f.grid();
    let u = f.physical_values();
    let peak = u.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if peak == 0.0 {
        return Ok(());
    }
    let (qx, qy) = (g.nx() / 4, g.ny() / 4);
    let mut outer = 0.0f64;
    for m in 0..g.ny() {
        let inner_y = m >= qy && m < g.ny() - qy;
        for j in 0..g.nx() {
            if inner_y && j >= qx && j < g.nx() - qx {
                continue;
            }
            outer = outer.max(u[m * g.nx() + j].abs());
        }
    }
    if outer >= 1e-8 * peak {
        return Err(Error::NotLocalized { ratio: outer / peak });
    }
    Ok(())
}

/// Sup norms of `D_x^beta W(t) psi` at the probe times.
pub fn decay_sup_norm(psi: &Field, probe: &DecayProbe, spec: &DispersionSpec) -> Result<DecaySeries> {
    probe.validate()?;
    check_localized(psi)?;
    let g = psi.grid();
    let kmax = spectral_extent(psi, 1e-8);
    let t_max = *probe.times.last().expect("validated");
    let reach = 3.0 * kmax * kmax * t_max;
    let p = probe.pad as f64;
    let limit = 0.5 * (p * g.lx()).min(p * g.ly()) - 10.0 * g.dx().max(g.dy());
    if reach > limit {
        return Err(Error::WrapAroundRisk { reach, limit });
    }

    let big = embed_padded(psi, probe.pad)?;
    let bg = big.grid().clone();
    let mut base = big.into_spectral_values();
    for m in 0..bg.ny() {
        for j in 0..bg.nx() {
            let kx = bg.kx()[j];
            let w = if kx == 0.0 || bg.is_nyquist_x(j) { 0.0 } else { kx.abs().powf(probe.beta) };
            base[m * bg.nx() + j] *= w;
        }
    }
    let theta = phase_table(&bg, spec);
    let mut sup = Vec::with_capacity(probe.times.len());
    let mut buf = vec![Complex64::default(); base.len()];
    for &t in &probe.times {
        for ((b, c), th) in buf.iter_mut().zip(&base).zip(&theta) {
            *b = c * Complex64::cis(-t * th);
        }
        let u = inverse_raw(&bg, &buf);
        sup.push(u.iter().fold(0.0f64, |a, v| a.max(v.abs())));
    }
    Ok(DecaySeries {
        times: probe.times.clone(),
        sup,
        hypothesis_holds: probe.hypothesis_holds(),
        reach,
        limit,
        kmax,
        pad: probe.pad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::frac_deriv_x;

    fn gaussian(g: &SpectralGrid, s: f64) -> Field {
        let (cx, cy) = (g.lx() / 2.0, g.ly() / 2.0);
        Field::from_fn(g, |x, y| (-((x - cx).powi(2) + (y - cy).powi(2)) / (2.0 * s * s)).exp())
    }

    #[test]
    fn hypothesis_strip() {
        let s = DispersionSpec { alpha: 1.0 };
        assert!(DecayProbe::new(&s, 0.2, vec![1.0]).unwrap().hypothesis_holds());
        let p = DecayProbe::new(&DispersionSpec { alpha: 0.0 }, 0.0, vec![1.0]).unwrap();
        assert!(!p.hypothesis_holds());
        assert!(matches!(p.strict(true).validate(), Err(Error::HypothesisViolation { .. })));
    }

    #[test]
    fn time_zero_is_direct_sup() {
        let g = SpectralGrid::new(64, 64, 40.0, 40.0).unwrap();
        let psi = gaussian(&g, 1.5);
        let spec = DispersionSpec { alpha: 1.0 };
        let probe = DecayProbe::new(&spec, 0.3, vec![0.0]).unwrap();
        let s = decay_sup_norm(&psi, &probe, &spec).unwrap();
        let direct = frac_deriv_x(&psi, 0.3).unwrap().sup_norm();
        assert!((s.sup[0] - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn padding_keeps_samples() {
        let g = SpectralGrid::new(8, 8, 8.0, 8.0).unwrap();
        let psi = gaussian(&g, 1.0);
        let big = embed_padded(&psi, 3).unwrap();
        assert_eq!(big.grid().nx(), 24);
        assert!((big.l2_norm() - psi.l2_norm()).abs() < 1e-14);
        assert_eq!(big.physical_values()[(8 + 4) * 24 + 8 + 4], psi.physical_values()[4 * 8 + 4]);
    }

    #[test]
    fn horizon_and_localization_errors() {
        let g = SpectralGrid::new(64, 64, 40.0, 40.0).unwrap();
        let spec = DispersionSpec { alpha: 1.0 };
        let probe = DecayProbe::new(&spec, 0.0, vec![1.0, 100.0]).unwrap();
        let e = decay_sup_norm(&gaussian(&g, 1.0), &probe, &spec);
        assert!(matches!(e, Err(Error::WrapAroundRisk { .. })));
        let wide = gaussian(&g, 8.0);
        let e = decay_sup_norm(&wide, &DecayProbe::new(&spec, 0.0, vec![0.1]).unwrap(), &spec);
        assert!(matches!(e, Err(Error::NotLocalized { .. })));
    }
}
