use std::f64::consts::PI;

use super::{check_fit, geometric};
use crate::harness::config::{DecayParams, KernelCheckParams};
use crate::harness::report::{Bound, Recorder, Source};
use crate::propagator::{
    decay_sup_norm, kernel_mollified, propagate_at_points, DecayProbe, DispersionSpec, KernelOptions, KxZeroRule,
};
use crate::spectral_core::{Field, SpectralGrid};
use crate::Result;

fn case_tag(alpha: f64, beta: f64) -> String {
    format!("alpha={alpha},beta={beta}")
}

/// Unit-mass Gaussian of width `sigma` centred in the box.
pub(super) fn unit_gaussian(g: &SpectralGrid, sigma: f64) -> Field {
    let (cx, cy) = (0.5 * g.lx(), 0.5 * g.ly());
    let norm = 1.0 / (2.0 * PI * sigma * sigma);
    Field::from_fn(g, |x, y| norm * (-((x - cx).powi(2) + (y - cy).powi(2)) / (2.0 * sigma * sigma)).exp())
}

pub(super) fn run(p: &DecayParams, rec: &mut Recorder) -> Result<()> {
    let grid = p.grid.build()?;
    let psi = unit_gaussian(&grid, p.sigma);
    let times = geometric(p.t_range[0], p.t_range[1], p.n_times);
    for &[alpha, beta] in &p.cases {
        let spec = DispersionSpec::new(alpha)?;
        let probe = DecayProbe::new(&spec, beta, times.clone())?.with_pad(p.pad).strict(p.strict);
        let s = decay_sup_norm(&psi, &probe, &spec)?;
        let t = case_tag(alpha, beta);
        if !s.hypothesis_holds {
            rec.note(format!("{t}: outside the strip alpha/2 - 1 < beta < alpha/2"));
        }
        rec.report(format!("decay.reach[{t}]"), s.reach);
        check_fit(rec, &format!("decay[{t}]"), &s.times, &s.sup, probe.predicted_slope(), p.slope_tol, p.residual_tol);
    }
    if let Some(k) = &p.kernel {
        kernel_check(k, rec)?;
    }
    Ok(())
}

/// Worst pointwise relative error between the grid propagation of a narrow
/// Gaussian and the contour-rotated kernel integral with the same mollifier.
pub fn kernel_error(k: &KernelCheckParams, alpha: f64, beta: f64, t: f64) -> Result<f64> {
    let grid = k.grid.build()?;
    let psi = unit_gaussian(&grid, k.sigma);
    let spec = DispersionSpec::new(alpha)?;
    let (sx, sy) = (t.cbrt(), t.powf((3.0 - alpha) / 6.0));
    let rel: Vec<(f64, f64)> = k.points.iter().map(|&[x, y]| (x * sx, y * sy)).collect();
    let (cx, cy) = (0.5 * grid.lx(), 0.5 * grid.ly());
    let abs: Vec<(f64, f64)> = rel.iter().map(|&(x, y)| (cx + x, cy + y)).collect();
    let got = propagate_at_points(&psi, t, beta, &spec, &abs, KxZeroRule::OneSidedMean)?;
    let opts = KernelOptions::default();
    let mut worst = 0.0f64;
    for (&(x, y), g) in rel.iter().zip(&got) {
        let r = kernel_mollified(t, x, y, beta, &spec, k.sigma, &opts)?.value.re / (4.0 * PI * PI);
        worst = worst.max((g - r).abs() / r.abs());
    }
    Ok(worst)
}

fn kernel_check(k: &KernelCheckParams, rec: &mut Recorder) -> Result<()> {
    for (cases, asserted) in [(&k.cases, true), (&k.report_cases, false)] {
        for &[alpha, beta] in cases {
            for &t in &k.times {
                let e = kernel_error(k, alpha, beta, t)?;
                let name = format!("kernel.rel_error[{},t={t}]", case_tag(alpha, beta));
                if asserted {
                    rec.push(name, e, Bound::AtMost { limit: k.rel_tol }, Source::Artifact);
                } else {
                    rec.report(name, e);
                }
            }
        }
    }
    Ok(())
}
