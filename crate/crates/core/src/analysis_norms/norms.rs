use serde::{Deserialize, Serialize};

use crate::evolution::Trajectory;
use crate::spectral_core::{frac_deriv_x, inv_dx, inv_dx_dy, japanese, Field};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    H,
    X,
    Xhat,
    /// `|f|_H^2 + |D_x^{(alpha-1)/2} f|_{L2}^2`
    Xalpha,
    /// the X_alpha norm exactly as printed, which repeats the X formula
    XalphaPrinted,
    Y,
    Yhat,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SobolevIndex {
    pub s1: f64,
    pub s2: f64,
    pub family: Family,
    #[serde(default)]
    pub alpha: f64,
}

impl SobolevIndex {
    pub fn h(s1: f64, s2: f64) -> Self {
        Self { s1, s2, family: Family::H, alpha: 0.0 }
    }

    pub fn new(s1: f64, s2: f64, family: Family, alpha: f64) -> Result<Self> {
        let idx = Self { s1, s2, family, alpha };
        idx.validate()?;
        Ok(idx)
    }

    pub fn validate(&self) -> Result<()> {
        if self.family != Family::H && !(self.s1 >= 0.0 && self.s2 >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "{:?} needs s1, s2 >= 0, got ({}, {})",
                self.family, self.s1, self.s2
            )));
        }
        if !(self.alpha.abs() <= 1.0) {
            return Err(Error::InvalidArgument(format!("alpha = {} outside [-1, 1]", self.alpha)));
        }
        Ok(())
    }
}

/// `(∫ (<xi>^{2 s1} + <eta>^{2 s2}) |f^|^2)^{1/2}` as a lattice sum.
pub fn h_norm(f: &Field, s1: f64, s2: f64) -> f64 {
    let g = f.grid();
    let c = f.spectral_values();
    let nx = g.nx();
    let wy: Vec<f64> = g.ky().iter().map(|k| japanese(*k).powf(2.0 * s2)).collect();
    let wx: Vec<f64> = g.kx().iter().map(|k| japanese(*k).powf(2.0 * s1)).collect();
    let mut sum = 0.0;
    for m in 0..g.ny() {
        for j in 0..nx {
            sum += (wx[j] + wy[m]) * c[m * nx + j].norm_sqr();
        }
    }
    (sum * g.area()).sqrt()
}

fn check_x_mean(f: &Field) -> Result<()> {
    inv_dx(f).map(|_| ())
}

pub fn norm(f: &Field, idx: &SobolevIndex) -> Result<f64> {
    idx.validate()?;
    let h2 = h_norm(f, idx.s1, idx.s2).powi(2);
    let extra = match idx.family {
        Family::H => 0.0,
        Family::X | Family::XalphaPrinted => h_norm(&inv_dx(f)?, idx.s1, idx.s2).powi(2),
        Family::Xhat => inv_dx(f)?.l2_norm().powi(2),
        Family::Xalpha => {
            let a = 0.5 * (idx.alpha - 1.0);
            if a < 0.0 {
                check_x_mean(f)?;
            }
            frac_deriv_x(f, a)?.l2_norm().powi(2)
        }
        Family::Y => h_norm(&inv_dx_dy(f)?, idx.s1, idx.s2).powi(2),
        Family::Yhat => inv_dx_dy(f)?.l2_norm().powi(2),
    };
    Ok((h2 + extra).sqrt())
}

/// Grid quadrature of the L^p norm; `p = f64::INFINITY` gives the max sample.
pub fn lp_norm(f: &Field, p: f64) -> f64 {
    let v = f.physical_values();
    if p.is_infinite() {
        return v.iter().fold(0.0f64, |a, s| a.max(s.abs()));
    }
    let s: f64 = v.iter().map(|s| s.abs().powf(p)).sum::<f64>() * f.grid().cell_area();
    s.powf(1.0 / p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedNormSpec {
    pub q: f64,
    pub p: f64,
}

impl MixedNormSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.p >= 1.0 && self.q >= 1.0) {
            return Err(Error::InvalidArgument(format!("exponents must be >= 1, got p={}, q={}", self.p, self.q)));
        }
        Ok(())
    }
}

/// `L_T^q` norm of a sampled function of time, trapezoid rule for finite q.
pub fn mixed_norm_series(times: &[f64], values: &[f64], q: f64) -> Result<f64> {
    if times.len() != values.len() || times.is_empty() {
        return Err(Error::InvalidArgument("times and values must be nonempty and aligned".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("times must increase".into()));
    }
    if q.is_infinite() {
        return Ok(values.iter().fold(0.0f64, |a, v| a.max(v.abs())));
    }
    let mut s = 0.0;
    for i in 1..times.len() {
        s += 0.5 * (times[i] - times[i - 1]) * (values[i].abs().powf(q) + values[i - 1].abs().powf(q));
    }
    Ok(s.powf(1.0 / q))
}

/// `L_T^q L_xy^p` over the snapshots of a trajectory.
pub fn mixed_norm(traj: &Trajectory, spec: &MixedNormSpec) -> Result<f64> {
    spec.validate()?;
    let v: Vec<f64> = traj.states.iter().map(|f| lp_norm(f, spec.p)).collect();
    mixed_norm_series(&traj.times, &v, spec.q)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::SpectralGrid;
    use std::f64::consts::PI;

    #[test]
    fn single_mode_weight() {
        let g = SpectralGrid::new(16, 16, 2.0 * PI, 2.0 * PI).unwrap();
        let f = Field::from_fn(&g, |x, y| 3.0 * (x + y).cos());
        // |c| = 3/2 on two modes with <1>^2 + <1>^2 = 4
        let want = (4.0 * 2.0 * 2.25 * g.area()).sqrt();
        assert!((h_norm(&f, 1.0, 1.0) - want).abs() < 1e-12 * want);
        // zero order: the two weights add up to 2
        assert!((h_norm(&f, 0.0, 0.0) - 2f64.sqrt() * f.l2_norm()).abs() < 1e-12);
    }

    #[test]
    fn families_and_preconditions() {
        let g = SpectralGrid::new(16, 16, 2.0 * PI, 2.0 * PI).unwrap();
        let f = Field::from_fn(&g, |x, y| (2.0 * x).sin() * y.cos());
        let h = norm(&f, &SobolevIndex::h(1.0, 1.0)).unwrap();
        for fam in [Family::X, Family::Xhat, Family::Xalpha, Family::XalphaPrinted, Family::Y, Family::Yhat] {
            let v = norm(&f, &SobolevIndex::new(1.0, 1.0, fam, -0.5).unwrap()).unwrap();
            assert!(v >= h);
        }
        let bad = Field::from_fn(&g, |_, y| y.cos());
        assert!(matches!(
            norm(&bad, &SobolevIndex::new(1.0, 1.0, Family::X, 0.0).unwrap()),
            Err(Error::NonzeroXMean { .. })
        ));
        assert!(norm(&bad, &SobolevIndex::new(1.0, 1.0, Family::Xalpha, 1.0).unwrap()).is_ok());
        assert!(SobolevIndex::new(-1.0, 1.0, Family::Y, 0.0).is_err());
    }

    #[test]
    fn lp_examples() {
        let g = SpectralGrid::new(32, 32, 1.0, 1.0).unwrap();
        let f = Field::from_fn(&g, |x, y| if (x - 0.5).abs() < 0.1 && (y - 0.5).abs() < 0.1 { 2.0 } else { 0.0 });
        assert_eq!(lp_norm(&f, f64::INFINITY), 2.0);
        assert!((lp_norm(&f, 2.0) - f.l2_norm()).abs() < 1e-14);
    }

    #[test]
    fn series_norms() {
        let t = [0.0, 0.5, 1.0];
        assert!((mixed_norm_series(&t, &[1.0, 1.0, 1.0], 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(mixed_norm_series(&t, &[1.0, -3.0, 2.0], f64::INFINITY).unwrap(), 3.0);
        assert!(mixed_norm_series(&t, &[1.0], 1.0).is_err());
    }
}
