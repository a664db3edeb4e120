use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;

use super::{rel_dist, tag};
use crate::evolution::{evolve, write_trajectory, SolverConfig};
use crate::harness::config::{ExperimentConfig, GridParams, SimulateParams};
use crate::harness::data::{gen_data, DataSpec};
use crate::harness::report::{Bound, Recorder, Source};
use crate::propagator::{apply_group, DispersionSpec};
use crate::spectral_core::{bessel, bessel_iso, deriv_x, frac_deriv_x, hilbert_x, inv_dx, Field, SpectralGrid};
use crate::Result;

fn noise(grid: &SpectralGrid, zero_x_mean: bool, seed: u64) -> Result<Field> {
    let band = 0.9 * grid.kx_max().min(grid.ky_max());
    gen_data(&DataSpec::Noise { amplitude: 1.0, band, slope: 0.0, zero_x_mean }, grid, seed)
}

/// Removes the kx = 0 plane and the kx Nyquist column.
fn project(f: &Field) -> Field {
    let g = f.grid();
    let mut c = f.spectral_values().into_owned();
    for m in 0..g.ny() {
        for j in 0..g.nx() {
            if g.kx()[j] == 0.0 || g.is_nyquist_x(j) {
                c[m * g.nx() + j] = Complex64::default();
            }
        }
    }
    Field::from_spectral(g, c).expect("same grid")
}

/// Exact identities of the multiplier layer on random data.
pub fn transform_suite(grid: &SpectralGrid, tol: f64, seed: u64, rec: &mut Recorder) -> Result<()> {
    let start = Instant::now();
    let derived = |rec: &mut Recorder, name: &str, v: f64| {
        rec.push(format!("transform.{name}"), v, Bound::AtMost { limit: tol }, Source::Derived)
    };
    let f = noise(grid, false, seed)?;
    let fz = noise(grid, true, seed.wrapping_add(1))?;

    let back = f.to_spectral().to_physical();
    let a = f.physical_values();
    let b = back.physical_values();
    let err = a.iter().zip(b.iter()).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
        / a.iter().map(|x| x * x).sum::<f64>().sqrt();
    derived(rec, "roundtrip", err);

    let phys = (a.iter().map(|x| x * x).sum::<f64>() * grid.cell_area()).sqrt();
    let spec = (f.spectral_values().iter().map(|c| c.norm_sqr()).sum::<f64>() * grid.area()).sqrt();
    derived(rec, "parseval", (phys - spec).abs() / phys);

    let hh = hilbert_x(&hilbert_x(&f));
    derived(rec, "hilbert_square", hh.add(&project(&f))?.l2_norm() / f.l2_norm());

    let mut worst = 0.0f64;
    for (s, t) in [(0.3, 0.5), (-0.4, 0.9), (1.0, -1.0), (-0.75, -0.5), (1.2, 0.7)] {
        let lhs = frac_deriv_x(&frac_deriv_x(&f, s)?, t)?;
        let rhs = frac_deriv_x(&f, s + t)?;
        worst = worst.max(rel_dist(&lhs, &rhs)?);
    }
    derived(rec, "frac_semigroup", worst);

    let mut worst = 0.0f64;
    for (sx, sy) in [(1.0, 0.0), (-1.3, 0.7), (2.0, 2.0)] {
        worst = worst.max(rel_dist(&bessel(&bessel(&f, sx, sy), -sx, -sy), &f)?);
    }
    worst = worst.max(rel_dist(&bessel_iso(&bessel_iso(&f, 1.5), -1.5), &f)?);
    derived(rec, "bessel_inverse", worst);

    derived(rec, "inv_dx", rel_dist(&deriv_x(&inv_dx(&fz)?), &project(&fz))?);

    rec.push(
        "transform.seconds",
        start.elapsed().as_secs_f64(),
        Bound::AtMost { limit: 10.0 },
        Source::Artifact,
    );
    Ok(())
}

/// Unitarity, group law and `W(0) = I` of the linear group.
pub fn group_suite(grid: &SpectralGrid, alphas: &[f64], times: &[f64], seed: u64, rec: &mut Recorder) -> Result<()> {
    let start = Instant::now();
    let f = noise(grid, false, seed)?.to_spectral();
    let n0 = f.l2_norm();
    for &alpha in alphas {
        let spec = DispersionSpec::new(alpha)?;
        let mut unit = 0.0f64;
        let mut law = 0.0f64;
        for &t in times {
            let w = apply_group(&f, t, &spec);
            unit = unit.max((w.l2_norm() - n0).abs() / n0);
            for &s in times {
                let two = apply_group(&w, s, &spec);
                law = law.max(rel_dist(&two, &apply_group(&f, t + s, &spec))?);
            }
        }
        let id = apply_group(&f, 0.0, &spec);
        let exact = id.spectral_values().iter().zip(f.spectral_values().iter()).all(|(a, b)| a == b);
        let t = tag(alpha);
        rec.push(format!("group.unitarity[{t}]"), unit, Bound::AtMost { limit: 1e-12 }, Source::Derived);
        rec.push(format!("group.law[{t}]"), law, Bound::AtMost { limit: 1e-11 }, Source::Derived);
        rec.push(format!("group.identity[{t}]"), exact as u8 as f64, Bound::AtLeast { limit: 1.0 }, Source::Derived);
    }
    rec.push("group.seconds", start.elapsed().as_secs_f64(), Bound::AtMost { limit: 5.0 }, Source::Artifact);
    Ok(())
}

pub(super) fn run(cfg: &ExperimentConfig, p: &SimulateParams, out: Option<&Path>, rec: &mut Recorder) -> Result<()> {
    let spec = cfg.dispersion_or(1.0);
    if p.preflight {
        let g = p.suite_grid.build()?;
        transform_suite(&g, p.suite_tol, cfg.seed, rec)?;
        let mut alphas = vec![1.0, 0.0, -1.0];
        if !alphas.contains(&spec.alpha) {
            alphas.push(spec.alpha);
        }
        group_suite(&g, &alphas, &p.group_times, cfg.seed, rec)?;
    }
    let grid = cfg.grid_or(GridParams::new(128, 128, 40.0, 40.0)).build()?;
    let solver = cfg.solver_or(SolverConfig::new(0.005, 1.0).with_stride(20));
    let psi = gen_data(&p.data, &grid, cfg.seed)?;
    let traj = evolve(&psi, &solver, &spec)?;
    rec.report("simulate.l2_drift", traj.relative_l2_drift());
    rec.report("simulate.mass_drift", traj.mass_drift());
    rec.report("simulate.hamiltonian_drift", traj.hamiltonian_drift());
    rec.report("simulate.final_sup", traj.last().sup_norm());
    if let (true, Some(dir)) = (p.write_trajectory, out) {
        let d = dir.join("trajectory");
        write_trajectory(&d, &traj)?;
        rec.files.push(d.to_string_lossy().into_owned());
    }
    Ok(())
}
