use std::fs;
use std::io::Write;
use std::path::Path;

use super::diagnostics::{diagnostics, Diagnostics};
use super::stepper::{IfRk4, SolverConfig};
use crate::propagator::DispersionSpec;
use crate::spectral_core::{write_snapshot, Field};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Field>,
    pub diagnostics: Vec<Diagnostics>,
}

impl Trajectory {
    pub fn last(&self) -> &Field {
        self.states.last().expect("trajectory holds the initial state")
    }

    pub fn relative_l2_drift(&self) -> f64 {
        let l0 = self.diagnostics[0].l2;
        self.diagnostics.iter().map(|d| (d.l2 - l0).abs()).fold(0.0, f64::max) / l0
    }

    pub fn mass_drift(&self) -> f64 {
        let m0 = self.diagnostics[0].mass;
        self.diagnostics.iter().map(|d| (d.mass - m0).abs()).fold(0.0, f64::max)
    }

    pub fn hamiltonian_drift(&self) -> f64 {
        let h0 = self.diagnostics[0].hamiltonian;
        self.diagnostics.iter().map(|d| (d.hamiltonian - h0).abs()).fold(0.0, f64::max)
    }
}

/// Integrates from `psi` to `cfg.t_end`, keeping every `snapshot_stride`-th
/// state and the final one.
pub fn evolve(psi: &Field, cfg: &SolverConfig, spec: &DispersionSpec) -> Result<Trajectory> {
    let steps = cfg.steps()?;
    spec.validate()?;
    let stepper = IfRk4::new(psi.grid(), cfg.dt, spec, cfg.dealias);
    let mut c = psi.spectral_values().into_owned();
    let mut traj = Trajectory {
        times: vec![0.0],
        states: vec![psi.clone()],
        diagnostics: vec![diagnostics(psi, spec, 0, 0.0)],
    };
    for n in 1..=steps {
        stepper.step(&mut c)?;
        if c.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite { step: n });
        }
        if n % cfg.snapshot_stride == 0 || n == steps {
            let t = n as f64 * cfg.dt;
            let f = Field::from_spectral(psi.grid(), c.clone())?.to_physical();
            traj.diagnostics.push(diagnostics(&f, spec, n, t));
            traj.times.push(t);
            traj.states.push(f);
        }
    }
    Ok(traj)
}

/// Writes `snap_00000.fzk, ...` and `diagnostics.csv` into `dir`.
pub fn write_trajectory(dir: &Path, traj: &Trajectory) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (i, f) in traj.states.iter().enumerate() {
        write_snapshot(&dir.join(format!("snap_{i:05}.fzk")), f)?;
    }
    let mut csv = fs::File::create(dir.join("diagnostics.csv"))?;
    writeln!(csv, "step,t,l2,mass,hamiltonian,sup_u,sup_ux,sup_uy")?;
    for d in &traj.diagnostics {
        writeln!(
            csv,
            "{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
            d.step, d.t, d.l2, d.mass, d.hamiltonian, d.sup_u, d.sup_ux, d.sup_uy
        )?;
    }
    Ok(())
}
