use num_complex::Complex64;

use super::group::{phase, DispersionSpec};
use crate::numerics::special::zeta;
use crate::spectral_core::Field;
use crate::{Error, Result};

/// Treatment of the kx = 0 plane when a lattice sum stands in for a
/// whole-line frequency integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KxZeroRule {
    /// the operator conventions: sgn(0) = 0 and |0|^beta = 0
    Lattice,
    /// the kx = 0 plane carries the mean of the one-sided limits of the
    /// group factor and the endpoint weight -2 zeta(-beta) dk^beta, so the
    /// kx sum is a second-order rule across the singular line
    OneSidedMean,
}

/// Evaluates `D_x^beta W(t) psi` at arbitrary points by exact trigonometric
/// interpolation of the propagated coefficients.
pub fn propagate_at_points(
    psi: &Field,
    t: f64,
    beta: f64,
    spec: &DispersionSpec,
    points: &[(f64, f64)],
    rule: KxZeroRule,
) -> Result<Vec<f64>> {
    if !(beta > -1.0 && beta <= 2.0) {
        return Err(Error::InvalidArgument(format!("beta = {beta} outside (-1, 2]")));
    }
    let g = psi.grid();
    let (nx, ny) = (g.nx(), g.ny());
    let dk = 2.0 * std::f64::consts::PI / g.lx();
    let c = psi.spectral_values();
    let zero_plane = |ky: f64| -> Complex64 {
        match rule {
            KxZeroRule::Lattice => Complex64::default(),
            KxZeroRule::OneSidedMean => {
                let weight = -2.0 * zeta(-beta) * dk.powf(beta);
                let group = if spec.alpha > 0.0 {
                    1.0
                } else if spec.alpha == 0.0 {
                    (t * ky * ky).cos()
                } else {
                    0.0
                };
                Complex64::new(weight * group, 0.0)
            }
        }
    };
    let mut prop = vec![Complex64::default(); nx * ny];
    for m in 0..ny {
        if g.is_nyquist_y(m) {
            continue;
        }
        let ky = g.ky()[m];
        for j in 0..nx {
            if g.is_nyquist_x(j) {
                continue;
            }
            let kx = g.kx()[j];
            let mult = if kx == 0.0 {
                zero_plane(ky)
            } else {
                Complex64::cis(-t * phase(kx, ky, spec)) * kx.abs().powf(beta)
            };
            prop[m * nx + j] = c[m * nx + j] * mult;
        }
    }
    let mut out = Vec::with_capacity(points.len());
    for &(x, y) in points {
        let ex: Vec<Complex64> = g.kx().iter().map(|k| Complex64::cis(k * x)).collect();
        let mut total = Complex64::default();
        for m in 0..ny {
            let row = &prop[m * nx..(m + 1) * nx];
            let s: Complex64 = row.iter().zip(&ex).map(|(a, b)| a * b).sum();
            total += s * Complex64::cis(g.ky()[m] * y);
        }
        out.push(total.re);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagator::apply_group;
    use crate::spectral_core::SpectralGrid;

    #[test]
    fn lattice_rule_matches_group_on_samples() {
        let g = SpectralGrid::new(32, 32, 20.0, 20.0).unwrap();
        let psi = Field::from_fn(&g, |x, y| (-((x - 10.0).powi(2) + (y - 10.0).powi(2)) / 4.0).exp());
        let spec = DispersionSpec { alpha: -0.5 };
        // remove the kx = 0 plane so both routes agree; the routes differ only
        // in the ky Nyquist row, which the Gaussian barely populates
        let psi = crate::spectral_core::frac_deriv_x(&psi, 0.0).unwrap();
        let w = apply_group(&psi, 0.7, &spec);
        let pts = [(g.x(3), g.y(5)), (g.x(17), g.y(30))];
        let v = propagate_at_points(&psi, 0.7, 0.0, &spec, &pts, KxZeroRule::Lattice).unwrap();
        let u = w.physical_values();
        assert!((v[0] - u[5 * 32 + 3]).abs() < 1e-10);
        assert!((v[1] - u[30 * 32 + 17]).abs() < 1e-10);
    }
}
