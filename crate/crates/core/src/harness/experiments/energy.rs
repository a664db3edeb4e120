use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bump;
use crate::analysis_norms::h_norm;
use crate::evolution::{evolve, Trajectory};
use crate::harness::config::{EnergyParams, ExperimentConfig};
use crate::harness::report::{Bound, Recorder, Source};
use crate::propagator::DispersionSpec;
use crate::spectral_core::{Field, SpectralGrid};
use crate::Result;

/// Random elliptic Gaussians with amplitude and widths drawn uniformly from the given ranges.
pub(super) fn gaussian_family(g: &SpectralGrid, n: usize, amp: [f64; 2], sigma: [f64; 2], rng: &mut ChaCha8Rng) -> Vec<Field> {
    (0..n)
        .map(|_| {
            let a = rng.gen_range(amp[0]..=amp[1]);
            let sx = rng.gen_range(sigma[0]..=sigma[1]);
            let sy = rng.gen_range(sigma[0]..=sigma[1]);
            bump(g, a, sx, sy)
        })
        .collect()
}

/// Running trapezoid integral of `f(diagnostic)` over the stored times.
pub(super) fn running_integral(traj: &Trajectory, f: impl Fn(usize) -> f64) -> Vec<f64> {
    let mut out = vec![0.0];
    for i in 1..traj.times.len() {
        let dt = traj.times[i] - traj.times[i - 1];
        out.push(out[i - 1] + 0.5 * dt * (f(i - 1) + f(i)));
    }
    out
}

/// `(log(sup_t |u|_H / |psi|_H), int_0^T |u_x|_inf + |u_y|_inf dt)`
fn gronwall_pair(psi: &Field, p: &EnergyParams, spec: &DispersionSpec) -> Result<(f64, f64)> {
    let traj = evolve(psi, &p.solver, spec)?;
    let [s1, s2] = p.s;
    let n0 = h_norm(psi, s1, s2);
    let sup = traj.states.iter().map(|u| h_norm(u, s1, s2)).fold(0.0, f64::max);
    let d = &traj.diagnostics;
    let integral = *running_integral(&traj, |i| d[i].sup_ux + d[i].sup_uy).last().expect("nonempty");
    Ok(((sup / n0).ln(), integral))
}

pub(super) fn run(cfg: &ExperimentConfig, p: &EnergyParams, rec: &mut Recorder) -> Result<()> {
    let grid = p.grid.build()?;
    let spec = DispersionSpec::new(p.alpha)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let fit = gaussian_family(&grid, p.fit_runs, p.amplitude, p.sigma, &mut rng);
    let held = gaussian_family(&grid, p.holdout_runs, p.amplitude, p.sigma, &mut rng);

    let mut cs = Vec::with_capacity(fit.len());
    for psi in &fit {
        let (growth, integral) = gronwall_pair(psi, p, &spec)?;
        cs.push(growth / integral);
    }
    let hi = cs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = cs.iter().cloned().fold(f64::INFINITY, f64::min);
    let spread = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    rec.push("energy.spread", spread, Bound::AtMost { limit: p.spread_tol }, Source::Artifact);
    let c_fit = p.margin * hi;
    rec.push("energy.c_fit", c_fit, Bound::Report, Source::Fitted);

    // largest excess of the held-out growth over the fitted bound
    let mut excess = f64::NEG_INFINITY;
    for psi in &held {
        let (growth, integral) = gronwall_pair(psi, p, &spec)?;
        excess = excess.max(growth - c_fit * integral);
    }
    rec.push("energy.holdout_excess", excess, Bound::AtMost { limit: 0.0 }, Source::Fitted);
    Ok(())
}
