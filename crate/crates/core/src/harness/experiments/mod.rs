mod bona_smith;
mod conserve;
mod decay;
mod energy;
mod flow;
mod gn;
mod illposed;
mod scaling;
mod simulate;
mod strichartz;

use std::path::Path;

use super::config::{Experiment, ExperimentConfig};
use super::report::{Bound, Recorder, Source};
use crate::numerics::{fit_loglog, LineFit};
use crate::spectral_core::{Field, SpectralGrid};
use crate::Result;

pub use simulate::{group_suite, transform_suite};

pub(super) fn dispatch(cfg: &ExperimentConfig, out: Option<&Path>, rec: &mut Recorder) -> Result<()> {
    match &cfg.experiment {
        Experiment::Simulate(p) => simulate::run(cfg, p, out, rec),
        Experiment::Conserve(p) => conserve::run(cfg, p, rec),
        Experiment::Scaling(p) => scaling::run(cfg, p, rec),
        Experiment::Decay(p) => decay::run(p, rec),
        Experiment::Strichartz(p) => strichartz::run(p, rec),
        Experiment::Energy(p) => energy::run(cfg, p, rec),
        Experiment::BonaSmith(p) => bona_smith::run(cfg, p, rec),
        Experiment::FlowContinuity(p) => flow::run(cfg, p, rec),
        Experiment::GnInequality(p) => gn::run(cfg, p, out, rec),
        Experiment::Illposed(p) => illposed::run(p, out, rec),
    }
}

/// `n` geometrically spaced points in `[lo, hi]`.
pub(crate) fn geometric(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let r = (hi / lo).ln() / (n - 1) as f64;
    (0..n).map(|i| lo * (r * i as f64).exp()).collect()
}

/// Log-log fit whose slope is checked against `target` and whose residual
/// must stay below `resid_tol`.
pub(crate) fn check_fit(
    rec: &mut Recorder,
    name: &str,
    x: &[f64],
    y: &[f64],
    target: f64,
    tol: f64,
    resid_tol: f64,
) -> LineFit {
    let fit = fit_loglog(x, y);
    rec.push(format!("{name}.slope"), fit.slope, Bound::Within { target, tol }, Source::Theory);
    rec.push(format!("{name}.residual"), fit.residual, Bound::AtMost { limit: resid_tol }, Source::Artifact);
    fit
}

/// Relative L2 distance `|a - b| / |b|`.
pub(crate) fn rel_dist(a: &Field, b: &Field) -> Result<f64> {
    Ok(a.sub(b)?.l2_norm() / b.l2_norm())
}

/// Anisotropic Gaussian bump centred in the box.
pub(crate) fn bump(g: &SpectralGrid, amp: f64, sx: f64, sy: f64) -> Field {
    let (cx, cy) = (0.5 * g.lx(), 0.5 * g.ly());
    Field::from_fn(g, |x, y| amp * (-(x - cx).powi(2) / (2.0 * sx * sx) - (y - cy).powi(2) / (2.0 * sy * sy)).exp())
}

pub(crate) fn tag(alpha: f64) -> String {
    format!("alpha={alpha}")
}
