use super::tag;
use crate::evolution::{evolve, SolverConfig};
use crate::harness::config::{ConserveParams, ExperimentConfig};
use crate::harness::data::gen_data;
use crate::harness::report::{Bound, Recorder, Source};
use crate::numerics::fit_loglog;
use crate::propagator::DispersionSpec;
use crate::Result;

pub(super) fn run(cfg: &ExperimentConfig, p: &ConserveParams, rec: &mut Recorder) -> Result<()> {
    let grid = p.grid.build()?;
    let psi = gen_data(&p.data, &grid, cfg.seed)?;
    let order_grid = p.order_grid.build()?;
    let psi_order = gen_data(&p.order_data, &order_grid, cfg.seed)?;
    for &alpha in &p.alphas {
        let spec = DispersionSpec::new(alpha)?;
        let t = tag(alpha);
        let traj = evolve(&psi, &SolverConfig::new(p.dt, p.t_end).with_stride(10), &spec)?;
        rec.push(format!("l2_drift[{t}]"), traj.relative_l2_drift(), Bound::AtMost { limit: p.l2_tol }, Source::Derived);
        rec.push(format!("mass_drift[{t}]"), traj.mass_drift(), Bound::AtMost { limit: p.mass_tol }, Source::Derived);
        let h0 = traj.diagnostics[0].hamiltonian.abs();
        rec.push(
            format!("hamiltonian_drift[{t}]"),
            traj.hamiltonian_drift() / h0,
            Bound::AtMost { limit: p.hamiltonian_tol },
            Source::Derived,
        );

        // largest Hamiltonian deviation over every step, for each dt
        let mut drifts = Vec::with_capacity(p.order_dts.len());
        for &dt in &p.order_dts {
            let tr = evolve(&psi_order, &SolverConfig::new(dt, p.t_end), &spec)?;
            drifts.push(tr.hamiltonian_drift());
        }
        for (i, w) in drifts.windows(2).enumerate() {
            rec.report(format!("hamiltonian_ratio[{t},{i}]"), w[0] / w[1]);
        }
        let fit = fit_loglog(&p.order_dts, &drifts);
        rec.push(
            format!("hamiltonian_order[{t}]"),
            fit.slope,
            Bound::Within { target: p.order_target, tol: p.order_tol },
            Source::Derived,
        );
    }
    Ok(())
}
