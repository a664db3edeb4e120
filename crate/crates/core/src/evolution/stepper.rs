use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::propagator::{phase_table, DispersionSpec};
use crate::spectral_core::{forward_raw, inverse_raw, wrap, Field, SpectralGrid};
use crate::{Error, Result};

/// Constant of the advective step restriction `dt <= C_STAB / (max|u| kx_max)`.
pub const C_STAB: f64 = 2.8;

fn default_dealias() -> f64 {
    2.0 / 3.0
}

fn default_stride() -> usize {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    pub dt: f64,
    pub t_end: f64,
    #[serde(default = "default_stride")]
    pub snapshot_stride: usize,
    #[serde(default = "default_dealias")]
    pub dealias: f64,
}

impl SolverConfig {
    pub fn new(dt: f64, t_end: f64) -> Self {
        Self { dt, t_end, snapshot_stride: 1, dealias: default_dealias() }
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.snapshot_stride = stride;
        self
    }

    /// Number of steps; `t_end / dt` must be an integer up to round-off.
    pub fn steps(&self) -> Result<usize> {
        if !(self.dt > 0.0 && self.t_end > 0.0 && self.dt <= self.t_end) {
            return Err(Error::InvalidArgument(format!(
                "need 0 < dt <= t_end, got dt={}, t_end={}",
                self.dt, self.t_end
            )));
        }
        let n = (self.t_end / self.dt).round();
        if (n * self.dt - self.t_end).abs() > 1e-9 * self.t_end || n > 1e7 {
            return Err(Error::InvalidArgument(format!(
                "t_end/dt = {} is not a usable integer step count",
                self.t_end / self.dt
            )));
        }
        if self.snapshot_stride == 0 {
            return Err(Error::InvalidArgument("snapshot_stride must be positive".into()));
        }
        if !(self.dealias > 0.0 && self.dealias <= 1.0) {
            return Err(Error::InvalidArgument(format!("dealias {} outside (0, 1]", self.dealias)));
        }
        Ok(n as usize)
    }
}

/// 1 on retained modes, 0 on modes beyond the dealiasing fraction.
pub fn dealias_mask(grid: &SpectralGrid, fraction: f64) -> Vec<f64> {
    let (nx, ny) = (grid.nx(), grid.ny());
    let cx = fraction * nx as f64 / 2.0;
    let cy = fraction * ny as f64 / 2.0;
    let mut mask = Vec::with_capacity(nx * ny);
    for m in 0..ny {
        let ok_y = (wrap(m, ny).abs() as f64) <= cy;
        for j in 0..nx {
            let ok_x = (wrap(j, nx).abs() as f64) <= cx;
            mask.push(if ok_x && ok_y { 1.0 } else { 0.0 });
        }
    }
    mask
}

struct NonlinearPlan {
    grid: SpectralGrid,
    mask: Vec<f64>,
    /// `i kx / 2` times the mask, zero on the kx Nyquist column
    dx_half: Vec<Complex64>,
}

impl NonlinearPlan {
    fn new(grid: &SpectralGrid, fraction: f64) -> Self {
        let mask = dealias_mask(grid, fraction);
        let nx = grid.nx();
        let dx_half = (0..grid.len())
            .map(|i| {
                let j = i % nx;
                if grid.is_nyquist_x(j) {
                    Complex64::default()
                } else {
                    Complex64::new(0.0, 0.5 * grid.kx()[j] * mask[i])
                }
            })
            .collect();
        Self { grid: grid.clone(), mask, dx_half }
    }

    /// Spectral `∂_x(u^2/2)` from the coefficients of `u`, and `max |P u|`.
    fn eval(&self, c: &[Complex64]) -> (Vec<Complex64>, f64) {
        let trunc: Vec<Complex64> = c.iter().zip(&self.mask).map(|(v, m)| v * m).collect();
        let u = inverse_raw(&self.grid, &trunc);
        let sup = u.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let sq: Vec<f64> = u.iter().map(|v| v * v).collect();
        let mut out = forward_raw(&self.grid, &sq);
        for (o, d) in out.iter_mut().zip(&self.dx_half) {
            *o *= d;
        }
        (out, sup)
    }
}

/// `u u_x = ∂_x(u^2/2)` with the product formed from the dealiased spectrum;
/// the output is truncated the same way. Returned in spectral form.
pub fn nonlinear_term(u: &Field) -> Field {
    nonlinear_term_with(u, 2.0 / 3.0)
}

pub fn nonlinear_term_with(u: &Field, dealias: f64) -> Field {
    let plan = NonlinearPlan::new(u.grid(), dealias);
    let (c, _) = plan.eval(&u.spectral_values());
    Field::from_spectral(u.grid(), c).expect("sizes match")
}

/// Integrating-factor RK4 over the exact group, with cached tables.
pub struct IfRk4 {
    nl: NonlinearPlan,
    dt: f64,
    e_half: Vec<Complex64>,
    e_full: Vec<Complex64>,
    limit: f64,
}

impl IfRk4 {
    pub fn new(grid: &SpectralGrid, dt: f64, spec: &DispersionSpec, dealias: f64) -> Self {
        let theta = phase_table(grid, spec);
        let nx = grid.nx();
        let factor = |h: f64| -> Vec<Complex64> {
            theta
                .iter()
                .enumerate()
                .map(|(i, th)| {
                    if grid.is_nyquist_x(i % nx) {
                        Complex64::default()
                    } else {
                        Complex64::cis(-h * th)
                    }
                })
                .collect()
        };
        Self {
            nl: NonlinearPlan::new(grid, dealias),
            dt,
            e_half: factor(0.5 * dt),
            e_full: factor(dt),
            limit: C_STAB / grid.kx_max(),
        }
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Advances the coefficient vector by one step.
    pub fn step(&self, c: &mut [Complex64]) -> Result<()> {
        let h = self.dt;
        let (n1, sup) = self.nl.eval(c);
        if sup > 0.0 && h > self.limit / sup {
            return Err(Error::StabilityBudgetExceeded { dt: h, limit: self.limit / sup });
        }
        let len = c.len();
        let mut tmp = vec![Complex64::default(); len];
        for i in 0..len {
            tmp[i] = self.e_half[i] * (c[i] + 0.5 * h * n1[i]);
        }
        let (n2, _) = self.nl.eval(&tmp);
        for i in 0..len {
            tmp[i] = self.e_half[i] * c[i] + 0.5 * h * n2[i];
        }
        let (n3, _) = self.nl.eval(&tmp);
        for i in 0..len {
            tmp[i] = self.e_full[i] * c[i] + self.e_half[i] * h * n3[i];
        }
        let (n4, _) = self.nl.eval(&tmp);
        for i in 0..len {
            c[i] = self.e_full[i] * c[i]
                + h / 6.0 * (self.e_full[i] * n1[i] + 2.0 * self.e_half[i] * (n2[i] + n3[i]) + n4[i]);
        }
        Ok(())
    }
}

/// One IF-RK4 step of the full equation.
pub fn step_ifrk4(u: &Field, dt: f64, spec: &DispersionSpec) -> Result<Field> {
    let stepper = IfRk4::new(u.grid(), dt, spec, 2.0 / 3.0);
    let mut c = u.spectral_values().into_owned();
    stepper.step(&mut c)?;
    let out = Field::from_spectral(u.grid(), c)?;
    Ok(if u.is_physical() { out.to_physical() } else { out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagator::apply_group;
    use std::f64::consts::PI;

    fn grid() -> SpectralGrid {
        SpectralGrid::new(32, 32, 2.0 * PI, 2.0 * PI).unwrap()
    }

    #[test]
    fn nonlinear_examples() {
        let g = grid();
        let k = Field::from_fn(&g, |_, _| 3.0);
        assert!(nonlinear_term(&k).l2_norm() < 1e-14);
        let s = Field::from_fn(&g, |x, _| x.sin());
        let want = Field::from_fn(&g, |x, _| x.sin() * x.cos());
        assert!(nonlinear_term(&s).sub(&want).unwrap().l2_norm() < 1e-13);
    }

    #[test]
    fn zero_stays_zero() {
        let g = grid();
        let z = Field::zeros(&g);
        let s = step_ifrk4(&z, 0.01, &DispersionSpec { alpha: 1.0 }).unwrap();
        assert_eq!(s.sup_norm(), 0.0);
    }

    #[test]
    fn stability_budget() {
        let g = grid();
        let u = Field::from_fn(&g, |x, _| 10.0 * x.sin());
        // kx_max = 16, so the budget is 2.8 / 160
        let e = step_ifrk4(&u, 0.02, &DispersionSpec { alpha: 1.0 });
        assert!(matches!(e, Err(Error::StabilityBudgetExceeded { .. })));
        assert!(step_ifrk4(&u, 0.017, &DispersionSpec { alpha: 1.0 }).is_ok());
    }

    #[test]
    fn linearization_order_two() {
        let g = grid();
        let spec = DispersionSpec { alpha: -0.5 };
        let psi = Field::from_fn(&g, |x, y| (x + y).sin() + 0.5 * (2.0 * x - y).cos());
        let mut errs = vec![];
        for eps in [1e-2, 1e-3, 1e-4] {
            let a = step_ifrk4(&psi.scale(eps), 0.05, &spec).unwrap();
            let b = apply_group(&psi.scale(eps), 0.05, &spec);
            errs.push(a.sub(&b).unwrap().l2_norm());
        }
        let f = crate::numerics::fit_loglog(&[1e-2, 1e-3, 1e-4], &errs);
        assert!((f.slope - 2.0).abs() < 0.05, "{f:?}");
    }

    #[test]
    fn config_steps() {
        assert_eq!(SolverConfig::new(1e-3, 1.0).steps().unwrap(), 1000);
        assert!(SolverConfig::new(0.3, 1.0).steps().is_err());
        assert!(SolverConfig::new(2.0, 1.0).steps().is_err());
    }
}
