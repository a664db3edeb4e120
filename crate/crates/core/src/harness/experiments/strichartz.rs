use num_complex::Complex64;

use super::decay::unit_gaussian;
use super::{bump, check_fit, geometric, tag};
use crate::harness::config::StrichartzParams;
use crate::harness::report::{Bound, Recorder, Source};
use crate::propagator::{apply_group, decay_sup_norm, DecayProbe, DispersionSpec};
use crate::spectral_core::{bessel, deriv_x, Field, SpectralGrid};
use crate::Result;

/// Endpoints of the interpolation family: the `theta = 1` sup-norm decay of
/// `D_x^{alpha/2 - eps} W(t)` and the `theta = 0` conservation of L2.
pub(super) fn run(p: &StrichartzParams, rec: &mut Recorder) -> Result<()> {
    let grid = p.grid.build()?;
    let psi = unit_gaussian(&grid, p.sigma);
    let times = geometric(p.t_range[0], p.t_range[1], p.n_times);
    let target = -(5.0 - 2.0 * p.eps) / 6.0;
    // the group removes the kx Nyquist column, so L2 is conserved on its complement
    let visible = drop_nyquist_x(&psi);
    for (alphas, asserted) in [(&p.alphas, true), (&p.report_alphas, false)] {
        for &alpha in alphas {
            let spec = DispersionSpec::new(alpha)?;
            let beta = 0.5 * alpha - p.eps;
            let probe = DecayProbe::new(&spec, beta, times.clone())?.with_pad(p.pad);
            let s = decay_sup_norm(&psi, &probe, &spec)?;
            let t = tag(alpha);
            if asserted {
                check_fit(rec, &format!("strichartz.sup[{t}]"), &s.times, &s.sup, target, p.slope_tol, p.residual_tol);
            } else {
                let fit = crate::numerics::fit_loglog(&s.times, &s.sup);
                rec.report(format!("strichartz.sup[{t}].slope"), fit.slope);
                rec.report(format!("strichartz.sup[{t}].residual"), fit.residual);
            }

            let n0 = visible.l2_norm();
            let drift = std::iter::once(0.0)
                .chain(times.iter().cloned())
                .map(|t| (apply_group(&visible, t, &spec).l2_norm() - n0).abs() / n0)
                .fold(0.0f64, f64::max);
            rec.push(format!("strichartz.l2[{t}]"), drift, Bound::AtMost { limit: p.l2_tol }, Source::Derived);
            if p.refined {
                refined_probe(alpha, p.eps, rec)?;
            }
        }
    }
    Ok(())
}

fn drop_nyquist_x(f: &Field) -> Field {
    let g = f.grid();
    let mut c = f.spectral_values().into_owned();
    for m in 0..g.ny() {
        for j in 0..g.nx() {
            if g.is_nyquist_x(j) {
                c[m * g.nx() + j] = Complex64::default();
            }
        }
    }
    Field::from_spectral(g, c).expect("same grid")
}

/// `|d_x w|_{L^1_T L^inf} / (T^{(7+2eps)/12} sup_t |J_x^{17/12 - alpha/4 + 2eps/3} w|_2)`
/// for free solutions on two resolutions; reported, not asserted.
fn refined_probe(alpha: f64, eps: f64, rec: &mut Recorder) -> Result<()> {
    let spec = DispersionSpec::new(alpha)?;
    let s = 17.0 / 12.0 - alpha / 4.0 + 2.0 * eps / 3.0;
    let mut per_grid = Vec::new();
    for n in [128, 256] {
        let g = SpectralGrid::new(n, n, 40.0, 40.0)?;
        let psi = bump(&g, 1.0, 1.5, 1.5);
        let rhs_norm = bessel(&psi, s, 0.0).l2_norm();
        let dpsi = deriv_x(&psi);
        let mut worst = 0.0f64;
        for t_end in [0.25, 0.5, 1.0] {
            let k = 64;
            let h = t_end / k as f64;
            let vals: Vec<f64> = (0..=k).map(|i| apply_group(&dpsi, i as f64 * h, &spec).sup_norm()).collect();
            let lhs = h * (vals.iter().sum::<f64>() - 0.5 * (vals[0] + vals[k]));
            worst = worst.max(lhs / (t_end.powf((7.0 + 2.0 * eps) / 12.0) * rhs_norm));
        }
        per_grid.push(worst);
    }
    let t = tag(alpha);
    rec.report(format!("strichartz.refined_ratio[{t}]"), per_grid[1]);
    rec.report(format!("strichartz.refined_refinement[{t}]"), per_grid[1] / per_grid[0]);
    Ok(())
}
