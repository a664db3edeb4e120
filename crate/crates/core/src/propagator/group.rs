use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::spectral_core::{apply_multiplier, Field, MultiplierSpec, NyquistRule, SpectralGrid, ZeroModeRule};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DispersionSpec {
    pub alpha: f64,
}

impl DispersionSpec {
    pub fn new(alpha: f64) -> Result<Self> {
        let s = Self { alpha };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.abs() <= 1.0) {
            return Err(Error::InvalidArgument(format!("alpha = {} outside [-1, 1]", self.alpha)));
        }
        Ok(())
    }
}

/// `xi^3 + sgn(xi) |xi|^alpha eta^2`, with sgn(0) = 0.
pub fn phase(kx: f64, ky: f64, spec: &DispersionSpec) -> f64 {
    if kx == 0.0 {
        return 0.0;
    }
    kx * kx * kx + kx.signum() * kx.abs().powf(spec.alpha) * ky * ky
}

/// Phase on the grid lattice, row-major with y outer.
pub fn phase_table(grid: &SpectralGrid, spec: &DispersionSpec) -> Vec<f64> {
    let mut out = Vec::with_capacity(grid.len());
    for &ky in grid.ky() {
        for &kx in grid.kx() {
            out.push(phase(kx, ky, spec));
        }
    }
    out
}

/// Multiplier `e^{-i t theta}`; the kx Nyquist column is removed since the
/// phase is odd in kx.
pub fn group_multiplier(t: f64, spec: &DispersionSpec) -> MultiplierSpec {
    let s = *spec;
    MultiplierSpec::new(
        move |kx, ky| Complex64::cis(-t * phase(kx, ky, &s)),
        ZeroModeRule::Symbol,
        NyquistRule::ZeroX,
    )
}

/// `W(t) psi`. `W(0)` returns the input unchanged.
pub fn apply_group(psi: &Field, t: f64, spec: &DispersionSpec) -> Field {
    if t == 0.0 {
        return psi.clone();
    }
    apply_multiplier(psi, &group_multiplier(t, spec)).expect("group symbol is unimodular")
}
