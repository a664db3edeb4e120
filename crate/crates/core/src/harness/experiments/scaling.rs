use super::rel_dist;
use crate::evolution::{evolve, SolverConfig};
use crate::harness::config::{ExperimentConfig, ScalingParams};
use crate::harness::data::gen_data;
use crate::harness::report::{Bound, Recorder, Source};
use crate::propagator::DispersionSpec;
use crate::spectral_core::{Field, SpectralGrid};
use crate::Result;

/// `u(x, y) -> u(-x, -y)` on the sample lattice.
fn reflect(f: &Field) -> Field {
    let g = f.grid();
    let (nx, ny) = (g.nx(), g.ny());
    let u = f.physical_values();
    let mut out = vec![0.0; u.len()];
    for m in 0..ny {
        for j in 0..nx {
            out[((ny - m) % ny) * nx + (nx - j) % nx] = u[m * nx + j];
        }
    }
    Field::from_physical(g, out).expect("same grid")
}

/// Compares `lambda^2 u(lambda x, lambda^{(3-alpha)/2} y, lambda^3 t)` with the
/// evolution of the rescaled datum on the correspondingly shrunk torus, and
/// checks time reversal `u(-x, -y, -t)`.
pub(super) fn run(cfg: &ExperimentConfig, p: &ScalingParams, rec: &mut Recorder) -> Result<()> {
    let spec = DispersionSpec::new(p.alpha)?;
    let lam = p.lambda;
    let mu = lam.powf(0.5 * (3.0 - p.alpha));
    let grid = p.grid.build()?;
    let psi = gen_data(&p.data, &grid, cfg.seed)?;
    let u = evolve(&psi, &SolverConfig::new(p.dt, p.t_end).with_stride(usize::MAX), &spec)?;

    let small = SpectralGrid::new(grid.nx(), grid.ny(), grid.lx() / lam, grid.ly() / mu)?;
    let scale = |f: &Field, g: &SpectralGrid| {
        let v: Vec<f64> = f.physical_values().iter().map(|s| lam * lam * s).collect();
        Field::from_physical(g, v)
    };
    let psi_l = scale(&psi, &small)?;
    let l3 = lam.powi(3);
    let u_l = evolve(&psi_l, &SolverConfig::new(p.dt / l3, p.t_end / l3).with_stride(usize::MAX), &spec)?;
    let want = scale(u.last(), &small)?;
    rec.push(
        "scaling.discrepancy",
        rel_dist(u_l.last(), &want)?,
        Bound::AtMost { limit: p.tol },
        Source::Theory,
    );

    if p.reflection {
        let back = evolve(&reflect(u.last()), &SolverConfig::new(p.dt, p.t_end).with_stride(usize::MAX), &spec)?;
        rec.push(
            "reflection.discrepancy",
            rel_dist(back.last(), &reflect(&psi))?,
            Bound::AtMost { limit: p.tol },
            Source::Derived,
        );
    }
    Ok(())
}
