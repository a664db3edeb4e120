use std::path::Path;

use serde::{Deserialize, Serialize};

use super::norms::lp_norm;
use crate::spectral_core::{deriv_x, deriv_y, frac_deriv_x, write_snapshot, Field};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub name: String,
    pub sup_ratio: f64,
    pub n_inputs: usize,
    pub grid: [usize; 2],
    pub witness_file: Option<String>,
    pub witness_index: usize,
    /// an input with `rhs = 0 < lhs` was seen; `sup_ratio` is then infinite
    pub violation: bool,
}

/// Sup of `lhs / rhs` over `inputs`. When `witness_dir` is given the maximizing input is
/// written there as a snapshot. Inputs with both sides zero are skipped.
pub fn probe_inequality<L, R>(
    name: &str,
    lhs: L,
    rhs: R,
    inputs: &[Field],
    witness_dir: Option<&Path>,
) -> Result<ProbeReport>
where
    L: Fn(&Field) -> Result<f64>,
    R: Fn(&Field) -> Result<f64>,
{
    let first = inputs
        .first()
        .ok_or_else(|| Error::InvalidArgument("probe needs at least one input".into()))?;
    let mut best = f64::NEG_INFINITY;
    let mut arg = 0;
    let mut violation = false;
    for (i, f) in inputs.iter().enumerate() {
        let (l, r) = (lhs(f)?, rhs(f)?);
        if !l.is_finite() || !r.is_finite() {
            return Err(Error::NonFinite { step: i });
        }
        let ratio = if r == 0.0 {
            if l > 0.0 {
                violation = true;
                f64::INFINITY
            } else {
                continue;
            }
        } else {
            l / r
        };
        if ratio > best {
            best = ratio;
            arg = i;
        }
    }
    let witness_file = match witness_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(format!("{name}_witness.fzk"));
            write_snapshot(&path, &inputs[arg])?;
            Some(path.to_string_lossy().into_owned())
        }
        None => None,
    };
    Ok(ProbeReport {
        name: name.to_string(),
        sup_ratio: best.max(0.0),
        n_inputs: inputs.len(),
        grid: [first.grid().nx(), first.grid().ny()],
        witness_file,
        witness_index: arg,
        violation,
    })
}

/// `|f|_{p+2}^{p+2}`
pub fn gn_lhs(f: &Field, p: f64) -> f64 {
    lp_norm(f, p + 2.0).powf(p + 2.0)
}

/// `|f|_2^{2-p(1-a)/4} |f_x|_2^{p(3-a)/4} |D_x^{(a-1)/2} f_y|_2^{p/2}`, valid for
/// `0 <= p <= 8/(1-a)`.
pub fn gn_rhs(f: &Field, alpha: f64, p: f64) -> Result<f64> {
    let pmax = if alpha < 1.0 { 8.0 / (1.0 - alpha) } else { f64::INFINITY };
    if !(0.0..=pmax).contains(&p) {
        return Err(Error::InvalidArgument(format!("p = {p} outside [0, {pmax}] for alpha = {alpha}")));
    }
    let e0 = 2.0 - p * (1.0 - alpha) / 4.0;
    let e1 = p * (3.0 - alpha) / 4.0;
    let e2 = p / 2.0;
    let fy = deriv_y(f);
    let d = frac_deriv_x(&fy, 0.5 * (alpha - 1.0))?;
    Ok(f.l2_norm().powf(e0) * deriv_x(f).l2_norm().powf(e1) * d.l2_norm().powf(e2))
}
