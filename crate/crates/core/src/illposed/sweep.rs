use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chi::chi_bound_scan;
use super::f3::{f3_norm, F3Quadrature};
use super::params::CounterexampleParams;
use crate::numerics::{fit_loglog, LineFit};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub big_n: f64,
    pub gamma: f64,
    pub eps: f64,
    pub max_abs_chi: f64,
    pub chi_ratio: f64,
    pub f3_norm: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthSweep {
    pub alpha: f64,
    pub eps: f64,
    pub s1: f64,
    pub s2: f64,
    pub t: f64,
    pub rows: Vec<SweepRow>,
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
    pub predicted_slope: f64,
    /// spread `max / min` of the chi ratio across the sweep
    pub chi_ratio_spread: f64,
}

impl CounterexampleParams {
    /// Copy with a different `N`; positive `alpha` goes through the control constructor.
    pub fn with_n(&self, big_n: f64) -> Result<Self> {
        if self.alpha > 0.0 {
            CounterexampleParams::control(self.alpha, self.eps, big_n)
        } else {
            CounterexampleParams::new(self.alpha, self.eps, big_n, self.s1, self.s2)
        }
    }
}

pub fn growth_sweep(
    template: &CounterexampleParams,
    ns: &[f64],
    t: f64,
    chi_samples: usize,
    q: &F3Quadrature,
) -> Result<GrowthSweep> {
    if ns.len() < 5 {
        return Err(Error::InvalidArgument(format!("growth sweep needs >= 5 values of N, got {}", ns.len())));
    }
    let rows = ns
        .par_iter()
        .map(|&n| {
            let p = template.with_n(n)?;
            let scan = chi_bound_scan(&p, chi_samples)?;
            Ok(SweepRow {
                big_n: n,
                gamma: p.gamma(),
                eps: p.eps,
                max_abs_chi: scan.max_abs_chi,
                chi_ratio: scan.chi_ratio,
                f3_norm: f3_norm(t, &p, q)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let x: Vec<f64> = rows.iter().map(|r| r.big_n).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.f3_norm).collect();
    let LineFit { slope, intercept, residual } = fit_loglog(&x, &y);
    let (lo, hi) = rows
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), r| (a.min(r.chi_ratio), b.max(r.chi_ratio)));
    Ok(GrowthSweep {
        alpha: template.alpha,
        eps: template.eps,
        s1: template.s1,
        s2: template.s2,
        t,
        rows,
        slope,
        intercept,
        residual,
        predicted_slope: template.predicted_slope(),
        chi_ratio_spread: hi / lo,
    })
}

/// CSV rows followed by the fit as one JSON object on a `#`-prefixed line.
pub fn write_sweep_csv(path: &Path, sweep: &GrowthSweep) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "N,gamma,eps,max_abs_chi,chi_ratio,f3_norm")?;
    for r in &sweep.rows {
        writeln!(f, "{},{:e},{},{:e},{:e},{:e}", r.big_n, r.gamma, r.eps, r.max_abs_chi, r.chi_ratio, r.f3_norm)?;
    }
    let manifest = serde_json::json!({
        "alpha": sweep.alpha,
        "eps": sweep.eps,
        "s1": sweep.s1,
        "s2": sweep.s2,
        "t": sweep.t,
        "slope": sweep.slope,
        "intercept": sweep.intercept,
        "residual": sweep.residual,
        "predicted_slope": sweep.predicted_slope,
        "chi_ratio_spread": sweep.chi_ratio_spread,
    });
    writeln!(f, "# {manifest}")?;
    f.flush()?;
    Ok(())
}
