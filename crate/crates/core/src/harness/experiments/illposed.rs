use std::path::Path;

use super::tag;
use crate::harness::config::IllposedParams;
use crate::harness::report::{Bound, Recorder, Source};
use crate::illposed::{
    build_phi_hat, growth_sweep, lattice_f3, pair_norm, resonance_chi, write_sweep_csv, CounterexampleParams,
    ModeLattice,
};
use crate::numerics::lowdisc::Kronecker4;
use crate::Result;

/// Largest violation of `chi(xi, xi1, eta, eta1) = chi(xi, xi - xi1, eta, eta - eta1)`,
/// relative to the size of the terms, over generic tuples and tuples drawn from the boxes.
pub fn chi_symmetry_defect(p: &CounterexampleParams, n: usize) -> Result<f64> {
    let th = p.theta();
    let (d1, d2) = (p.d1(), p.d2());
    let mut worst = 0.0f64;
    let mut check = |x1: f64, y1: f64, x2: f64, y2: f64| -> Result<()> {
        let (xi, eta) = (x1 + x2, y1 + y2);
        let a = resonance_chi(xi, x1, eta, y1, th)?;
        let b = resonance_chi(xi, xi - x1, eta, eta - y1, th)?;
        let scale = 1.0 + a.abs().max(3.0 * xi * x1 * x2) + eta * eta + y1 * y1;
        worst = worst.max((a - b).abs() / scale);
        Ok(())
    };
    for s in Kronecker4::new([0.25; 4]).take(n) {
        check(0.01 + 50.0 * s[0], -1e3 + 2e3 * s[1], 0.01 + 50.0 * s[2], -1e3 + 2e3 * s[3])?;
        let x1 = d2.xi_lo + s[0] * d2.xi_width();
        let y1 = d2.eta_anchor + d2.eta_lo + s[1] * d2.eta_width();
        let x2 = d1.xi_lo + s[2] * d1.xi_width();
        let y2 = d1.eta_anchor + d1.eta_lo + s[3] * d1.eta_width();
        check(x1, y1, x2, y2)?;
    }
    Ok(worst)
}

pub(super) fn run(p: &IllposedParams, out: Option<&Path>, rec: &mut Recorder) -> Result<()> {
    let ns: Vec<f64> = p.log2_n.iter().map(|&k| 2f64.powi(k as i32)).collect();
    let sweeps = p.cases.iter().map(|c| (c, true)).chain(p.control.iter().map(|c| (c, false)));
    for (&[alpha, eps], asserted) in sweeps {
        let t = format!("{},eps={eps}", tag(alpha));
        let template = if asserted {
            CounterexampleParams::new(alpha, eps, ns[0], 0.0, 0.0)?
        } else {
            CounterexampleParams::control(alpha, eps, ns[0])?
        };
        let sweep = growth_sweep(&template, &ns, p.t, p.chi_samples, &p.quadrature)?;
        if let Some(dir) = out {
            let path = dir.join(format!("sweep_alpha{alpha}_eps{eps}.csv"));
            write_sweep_csv(&path, &sweep)?;
            rec.files.push(path.to_string_lossy().into_owned());
        }
        if !asserted {
            rec.report(format!("illposed.growth[{t}].slope"), sweep.slope);
            rec.note(format!("{t} is a control run outside the ill-posedness range"));
            continue;
        }
        rec.push(
            format!("illposed.growth[{t}].slope"),
            sweep.slope,
            Bound::Within { target: sweep.predicted_slope, tol: p.growth_tol },
            Source::Theory,
        );
        rec.push(format!("illposed.growth[{t}].residual"), sweep.residual, Bound::AtMost { limit: 0.1 }, Source::Artifact);
        rec.push(
            format!("illposed.chi_ratio_spread[{t}]"),
            sweep.chi_ratio_spread,
            Bound::AtMost { limit: p.ratio_spread_tol },
            Source::Theory,
        );
        rec.push(
            format!("illposed.chi_symmetry[{t}]"),
            chi_symmetry_defect(&template, p.symmetry_samples)?,
            Bound::AtMost { limit: p.symmetry_tol },
            Source::Theory,
        );

        // frequency quadrature against the lattice Duhamel oracle at successive resolutions
        let small = CounterexampleParams::new(alpha, eps, p.oracle_n, 0.0, 0.0)?;
        let mut errs = Vec::new();
        let mut n = 4;
        while n <= p.oracle_points {
            let phi = build_phi_hat(&small, &ModeLattice::resolving(&small, n))?;
            let o = lattice_f3(&phi, alpha, p.t, (0.0, 0.0), p.oracle_quad_steps)?;
            let amp = phi.d1.amp * phi.d2.amp;
            let cont = pair_norm(p.t, &phi.d2.snapped, &phi.d1.snapped, amp, small.theta(), (0.0, 0.0), true, &p.quadrature)?;
            errs.push((cont / o.norm - 1.0).abs());
            n *= 2;
        }
        for (i, e) in errs.iter().enumerate() {
            rec.report(format!("illposed.oracle_rel_error[{t},level={i}]"), *e);
        }
        let last = *errs.last().unwrap_or(&f64::NAN);
        rec.push(format!("illposed.oracle_rel_error[{t}]"), last, Bound::AtMost { limit: p.oracle_tol }, Source::Derived);
        let improving = errs.windows(2).all(|w| w[1] < w[0]);
        rec.push(format!("illposed.oracle_improves[{t}]"), improving as u8 as f64, Bound::AtLeast { limit: 1.0 }, Source::Derived);
    }
    Ok(())
}
