use std::path::Path;

use num_complex::Complex64;

use super::tag;
use crate::analysis_norms::{gn_lhs, gn_rhs, lp_norm, probe_inequality};
use crate::harness::config::{ExperimentConfig, GnParams};
use crate::harness::data::{gen_data, DataSpec};
use crate::harness::report::{Bound, Recorder, Source};
use crate::spectral_core::{wrap, Field, SpectralGrid};
use crate::Result;

/// Same Fourier coefficients on a finer grid of the same box.
fn refine(f: &Field, fine: &SpectralGrid) -> Result<Field> {
    let g = f.grid();
    let c = f.spectral_values();
    let mut out = vec![Complex64::default(); fine.len()];
    for m in 0..g.ny() {
        if g.is_nyquist_y(m) {
            continue;
        }
        let iy = wrap(m, g.ny()).rem_euclid(fine.ny() as i64) as usize;
        for j in 0..g.nx() {
            if g.is_nyquist_x(j) {
                continue;
            }
            let ix = wrap(j, g.nx()).rem_euclid(fine.nx() as i64) as usize;
            out[iy * fine.nx() + ix] = c[m * g.nx() + j];
        }
    }
    Ok(Field::from_spectral(fine, out)?.to_physical())
}

pub(super) fn run(cfg: &ExperimentConfig, p: &GnParams, out: Option<&Path>, rec: &mut Recorder) -> Result<()> {
    let [n0, n1] = p.sizes;
    let coarse = SpectralGrid::new(n0, n0, p.length, p.length)?;
    let fine = SpectralGrid::new(n1, n1, p.length, p.length)?;
    let spec = DataSpec::Noise { amplitude: 1.0, band: p.band, slope: 0.0, zero_x_mean: true };
    let fields = (0..p.n_fields)
        .map(|i| gen_data(&spec, &coarse, cfg.seed.wrapping_add(i as u64)))
        .collect::<Result<Vec<_>>>()?;
    let refined = fields.iter().map(|f| refine(f, &fine)).collect::<Result<Vec<_>>>()?;
    let pp = p.p;
    for &alpha in &p.alphas {
        let t = tag(alpha);
        let name = format!("gn_alpha{alpha}");
        let lhs = |f: &Field| Ok(gn_lhs(f, pp));
        let rhs = |f: &Field| gn_rhs(f, alpha, pp);
        let a = probe_inequality(&name, lhs, rhs, &fields, None)?;
        let b = probe_inequality(&name, lhs, rhs, &refined, out)?;
        if let Some(w) = &b.witness_file {
            rec.files.push(w.clone());
        }
        let finite = !(a.violation || b.violation) && a.sup_ratio.is_finite() && b.sup_ratio.is_finite();
        rec.push(format!("gn.finite[{t}]"), finite as u8 as f64, Bound::AtLeast { limit: 1.0 }, Source::Theory);
        rec.report(format!("gn.sup_ratio[{t},n={n0}]"), a.sup_ratio);
        rec.report(format!("gn.sup_ratio[{t},n={n1}]"), b.sup_ratio);
        let stab = (a.sup_ratio / b.sup_ratio).max(b.sup_ratio / a.sup_ratio);
        rec.push(format!("gn.stability[{t}]"), stab, Bound::AtMost { limit: p.stability_tol }, Source::Artifact);
    }

    // log-convexity of r -> |f|_r^r
    let mut violations = 0usize;
    let mut worst = f64::NEG_INFINITY;
    for f in fields.iter().take(p.interpolation_fields) {
        for (lo, hi, th) in [(2.0, 4.0, 0.5), (2.0, 6.0, 0.25), (3.0, 8.0, 0.6)] {
            let r = th * lo + (1.0 - th) * hi;
            let l = lp_norm(f, r).powf(r);
            let bound = lp_norm(f, lo).powf(th * lo) * lp_norm(f, hi).powf((1.0 - th) * hi);
            let excess = l / bound - 1.0;
            worst = worst.max(excess);
            if excess > 1e-12 {
                violations += 1;
            }
        }
    }
    rec.report("gn.interpolation_worst", worst);
    rec.push("gn.interpolation_violations", violations as f64, Bound::AtMost { limit: 0.0 }, Source::Derived);
    Ok(())
}
