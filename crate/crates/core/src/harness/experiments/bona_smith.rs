use super::geometric;
use crate::analysis_norms::h_norm;
use crate::harness::config::{BonaSmithParams, ExperimentConfig};
use crate::harness::data::{gen_data, DataSpec};
use crate::harness::report::{Bound, Recorder, Source};
use crate::numerics::fit_loglog;
use crate::spectral_core::{bona_smith_smooth, japanese, SmoothingParams, SpectralGrid};
use crate::{Error, Result};

/// Nonnegative lattice wavenumbers of the grid in each direction.
fn half_lattice(g: &SpectralGrid) -> (Vec<f64>, Vec<f64>) {
    let kx = g.kx().iter().cloned().filter(|k| *k >= 0.0).collect();
    let ky = g.ky().iter().cloned().filter(|k| *k >= 0.0).collect();
    (kx, ky)
}

/// Operator norm of `f -> f^tau` from `H^{s1,s2}` to `H^{s1+1,s2}` restricted
/// to the lattice: the sup of the multiplier ratio over all modes.
pub fn smoothing_gain(g: &SpectralGrid, tau: f64, s1: f64, s2: f64) -> f64 {
    let (kx, ky) = half_lattice(g);
    let mut best = 0.0f64;
    for &b in &ky {
        let jy = japanese(b);
        for &a in &kx {
            let jx = japanese(a);
            let low = jx.powf(2.0 * s1) + jy.powf(2.0 * s2);
            let high = jx.powf(2.0 * s1 + 2.0) + jy.powf(2.0 * s2);
            let w = (-tau * (jx.powf(s1) + jy.powf(s2))).exp();
            best = best.max((high / low).sqrt() * w);
        }
    }
    best
}

/// Lattice operator norm of `(f^tau - f^theta) / (tau - theta)` from `H^{s1,s2}` to L2.
pub fn smoothing_lipschitz(g: &SpectralGrid, tau: f64, theta: f64, s1: f64, s2: f64) -> f64 {
    let (kx, ky) = half_lattice(g);
    let mut best = 0.0f64;
    for &b in &ky {
        let jy = japanese(b);
        for &a in &kx {
            let jx = japanese(a);
            let w = jx.powf(s1) + jy.powf(s2);
            let d = ((-theta * w).exp() - (-tau * w).exp()) / (tau - theta);
            best = best.max(d / (jx.powf(2.0 * s1) + jy.powf(2.0 * s2)).sqrt());
        }
    }
    best
}

pub(super) fn run(cfg: &ExperimentConfig, p: &BonaSmithParams, rec: &mut Recorder) -> Result<()> {
    if p.tau_ranges.len() != p.s1.len() {
        return Err(Error::Config("tau_ranges needs one window per s1".into()));
    }
    let grid = p.grid.build()?;
    let kmax = grid.kx_max().min(grid.ky_max());
    let s2 = p.s2;
    // random data on a coarser grid of the same box
    let fgrid = SpectralGrid::new(256, 256, grid.lx(), grid.ly())?;
    let fields = (0..p.n_fields)
        .map(|i| {
            let spec = DataSpec::Noise { amplitude: 1.0, band: 100.0, slope: 0.0, zero_x_mean: false };
            gen_data(&spec, &fgrid, cfg.seed.wrapping_add(i as u64))
        })
        .collect::<Result<Vec<_>>>()?;

    for (&s1, &[lo, hi]) in p.s1.iter().zip(&p.tau_ranges) {
        let taus = geometric(lo, hi, p.n_tau);
        // the maximizing mode must sit inside the lattice for the sup to see the power law
        let kstar = (1.0 / (lo * s1)).powf(1.0 / s1);
        if kstar > kmax {
            return Err(Error::Config(format!("tau = {lo} puts the optimal mode {kstar:.0} beyond kmax = {kmax}")));
        }
        let gains: Vec<f64> = taus.iter().map(|&t| smoothing_gain(&grid, t, s1, s2)).collect();
        let fit = fit_loglog(&taus, &gains);
        let target = -1.0 / s1;
        let tag = format!("s1={s1}");
        rec.push(
            format!("bona_smith.gain[{tag}].slope"),
            fit.slope,
            Bound::Within { target, tol: p.slope_rel_tol * target.abs() },
            Source::Theory,
        );
        rec.push(format!("bona_smith.gain[{tag}].residual"), fit.residual, Bound::AtMost { limit: 0.1 }, Source::Artifact);

        let mut lip = 0.0f64;
        for (i, &a) in taus.iter().enumerate() {
            lip = lip.max(smoothing_lipschitz(&grid, a, 0.0, s1, s2));
            for &b in &taus[..i] {
                lip = lip.max(smoothing_lipschitz(&grid, a, b, s1, s2));
            }
        }
        rec.push(format!("bona_smith.lipschitz[{tag}]"), lip, Bound::AtMost { limit: p.c_tol }, Source::Theory);

        // field-level checks: the Lipschitz ratio, monotone convergence, and the
        // smoothing gain for white data
        let mut field_lip = 0.0f64;
        let mut violations = 0usize;
        let mut white = Vec::new();
        for f in &fields {
            let nf = h_norm(f, s1, s2);
            let smoothed: Vec<_> = taus
                .iter()
                .map(|&t| SmoothingParams::new(t, 0.0, s1, s2).map(|sp| bona_smith_smooth(f, &sp)))
                .collect::<Result<_>>()?;
            for i in 0..taus.len() {
                for j in 0..i {
                    let d = smoothed[i].sub(&smoothed[j])?.l2_norm();
                    field_lip = field_lip.max(d / ((taus[i] - taus[j]) * nf));
                }
            }
            // taus increase, so the distance to f must increase along them
            let dist = smoothed.iter().map(|g| Ok(h_norm(&g.sub(f)?, s1, s2))).collect::<Result<Vec<f64>>>()?;
            violations += dist.windows(2).filter(|w| w[1] < w[0]).count();
            white.push(smoothed.iter().map(|g| h_norm(g, s1 + 1.0, s2) / nf).collect::<Vec<f64>>());
        }
        rec.push(format!("bona_smith.field_lipschitz[{tag}]"), field_lip, Bound::AtMost { limit: lip }, Source::Derived);
        rec.push(
            format!("bona_smith.monotone_violations[{tag}]"),
            violations as f64,
            Bound::AtMost { limit: 0.0 },
            Source::Derived,
        );
        if let Some(w) = white.first() {
            rec.report(format!("bona_smith.white_slope[{tag}]"), fit_loglog(&taus, w).slope);
        }
    }
    Ok(())
}
