//! Three small entry points for the static page in `www/`.

use frakzk::evolution::{evolve, SolverConfig};
use frakzk::illposed::{growth_sweep, CounterexampleParams, F3Quadrature};
use frakzk::propagator::{decay_sup_norm, DecayProbe, DispersionSpec};
use frakzk::spectral_core::{Field, SpectralGrid};
use wasm_bindgen::prelude::*;

fn js_err(e: frakzk::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn bump(g: &SpectralGrid, amp: f64, sigma: f64) -> Field {
    let (cx, cy) = (0.5 * g.lx(), 0.5 * g.ly());
    Field::from_fn(g, |x, y| amp * (-((x - cx).powi(2) + (y - cy).powi(2)) / (2.0 * sigma * sigma)).exp())
}

/// Evolves a Gaussian bump on a 64x64 box of side 40 and returns the final
/// samples, row-major.
#[wasm_bindgen]
pub fn evolve_bump(alpha: f64, amplitude: f64, t_end: f64) -> Result<Vec<f64>, JsError> {
    let g = SpectralGrid::new(64, 64, 40.0, 40.0).map_err(js_err)?;
    let spec = DispersionSpec::new(alpha).map_err(js_err)?;
    let dt = 0.01;
    let t_end = (t_end / dt).round().max(1.0) * dt;
    let psi = bump(&g, amplitude, 1.5);
    let traj = evolve(&psi, &SolverConfig::new(dt, t_end).with_stride(usize::MAX), &spec).map_err(js_err)?;
    Ok(traj.last().physical_values().into_owned())
}

/// Sup norm of `D_x^beta W(t) psi` at 9 times in `[1, 8]`, returned as
/// `[t_0, .., t_8, sup_0, .., sup_8]`.
#[wasm_bindgen]
pub fn decay_curve(alpha: f64, beta: f64) -> Result<Vec<f64>, JsError> {
    let g = SpectralGrid::new(128, 128, 200.0, 200.0).map_err(js_err)?;
    let spec = DispersionSpec::new(alpha).map_err(js_err)?;
    let (cx, cy) = (100.0, 100.0);
    let psi = Field::from_fn(&g, |x, y| (-((x - cx).powi(2) + (y - cy).powi(2)) / 2.0).exp());
    let times: Vec<f64> = (0..9).map(|i| 2f64.powf(3.0 * i as f64 / 8.0)).collect();
    let probe = DecayProbe::new(&spec, beta, times).map_err(js_err)?.with_pad(2);
    let s = decay_sup_norm(&psi, &probe, &spec).map_err(js_err)?;
    Ok(s.times.into_iter().chain(s.sup).collect())
}

/// Norm of the second Duhamel iterate for `N = 2^6 .. 2^10`, returned as
/// `[N_0, .., N_4, norm_0, .., norm_4, fitted slope]`.
#[wasm_bindgen]
pub fn growth_curve(alpha: f64, eps: f64) -> Result<Vec<f64>, JsError> {
    let tpl = CounterexampleParams::new(alpha, eps, 64.0, 0.0, 0.0).map_err(js_err)?;
    let ns: Vec<f64> = (6..=10).map(|k| 2f64.powi(k)).collect();
    let sweep = growth_sweep(&tpl, &ns, 1.0, 10_000, &F3Quadrature::default()).map_err(js_err)?;
    let mut out = ns;
    out.extend(sweep.rows.iter().map(|r| r.f3_norm));
    out.push(sweep.slope);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_points_return_full_arrays() {
        let u = evolve_bump(1.0, 1.0, 0.2).unwrap();
        assert_eq!(u.len(), 64 * 64);
        assert!(u.iter().all(|v| v.is_finite()));
        let d = decay_curve(1.0, 0.0).unwrap();
        assert_eq!(d.len(), 18);
        assert!(d[17] < d[9]);
        let g = growth_curve(-1.0, 0.01).unwrap();
        assert_eq!(g.len(), 11);
        assert!((g[10] - 0.2425).abs() < 0.05);
    }
}
