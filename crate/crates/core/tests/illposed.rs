use frakzk::evolution::picard_iterate;
use frakzk::illposed::*;
use frakzk::propagator::{apply_group, DispersionSpec};
use frakzk::spectral_core::{Field, SpectralGrid};
use frakzk::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn chi_symmetry(xi1 in 0.01f64..50.0, xi2 in 0.01f64..50.0, eta in -1e3f64..1e3, eta1 in -1e3f64..1e3, th in 0.05f64..1.0) {
        let xi = xi1 + xi2;
        let a = resonance_chi(xi, xi1, eta, eta1, th).unwrap();
        let b = resonance_chi(xi, xi - xi1, eta, eta - eta1, th).unwrap();
        let scale = 1.0 + a.abs().max(3.0 * xi * xi1 * xi2) + eta.abs().powi(2) + eta1.abs().powi(2);
        prop_assert!((a - b).abs() <= 1e-12 * scale);
    }

    #[test]
    fn kernel_stable_matches_naive(t in 0.01f64..10.0, chi in -100.0f64..100.0) {
        prop_assume!((t * chi).abs() > 1e-6);
        let (a, b) = (duhamel_kernel(t, chi), duhamel_kernel_naive(t, chi));
        prop_assert!((a - b).norm() <= 1e-10 * a.norm());
    }
}

#[test]
fn eta_roots_solve_the_quadratic() {
    // coefficients of the quadratic in eta obtained by clearing denominators in chi = 0
    let p = CounterexampleParams::new(-1.0, 0.01, 64.0, 0.0, 0.0).unwrap();
    for th in [1.0f64, 0.5, 0.25] {
        let (d1, d2) = (p.d1(), p.d2());
        for k in 0..20 {
            let u = k as f64 / 19.0;
            let xi1 = d2.xi_lo + u * d2.xi_width();
            let xi2 = d1.xi_lo + (1.0 - u) * d1.xi_width();
            let eta1 = (3.0 / th).sqrt() * xi1.powf(0.5 * (3.0 + th)) * (1.0 + 0.01 * u);
            let xi = xi1 + xi2;
            let (x, y, z) = (xi.powf(th), xi1.powf(th), xi2.powf(th));
            let a = (x - z) * y;
            let b = -2.0 * x * y * eta1;
            let c = (y + z) * x * eta1 * eta1 - 3.0 * (xi * xi1 * xi2).powf(1.0 + th);
            let disc = (b * b - 4.0 * a * c).sqrt();
            let (r1, r2) = ((-b - disc) / (2.0 * a), (-b + disc) / (2.0 * a));
            let (e1, e2) = eta_roots(xi, xi1, eta1, th).unwrap();
            assert!((e1 - r1).abs() < 1e-9 * r1.abs() && (e2 - r2).abs() < 1e-9 * r2.abs(), "{e1} {r1} {e2} {r2}");
            let scale = 3.0 * xi * xi1 * xi2;
            for e in [e1, e2] {
                let v = resonance_chi_pair(xi1, eta1, xi2, e - eta1, th);
                assert!(v.abs() < 1e-9 * scale, "chi at root {v} vs {scale}");
            }
        }
    }
}

#[test]
fn chi_ratio_is_stable_in_n() {
    for (alpha, eps) in [(-1.0, 0.01), (-0.5, 0.02)] {
        let r: Vec<f64> = (6..=12)
            .map(|k| {
                let p = CounterexampleParams::new(alpha, eps, 2f64.powi(k), 0.0, 0.0).unwrap();
                chi_bound_scan(&p, 10_000).unwrap().chi_ratio
            })
            .collect();
        let (lo, hi) = r.iter().fold((f64::INFINITY, 0.0f64), |(a, b), v| (a.min(*v), b.max(*v)));
        assert!(lo > 0.0 && hi / lo <= 2.0, "{r:?}");
    }
    // low-low interactions are of size gamma^3, far below gamma^2 N
    let p = CounterexampleParams::new(-1.0, 0.01, 256.0, 0.0, 0.0).unwrap();
    let s = chi_bound_scan(&p, 10_000).unwrap();
    assert!(s.low_ratio < 10.0 && s.max_abs_chi_low < 1e-3 * s.max_abs_chi);
}

#[test]
fn phi_norm_is_order_one() {
    let p = CounterexampleParams::new(-1.0, 0.01, 64.0, 1.0, 1.0).unwrap();
    let phi = build_phi_hat(&p, &ModeLattice::resolving(&p, 8)).unwrap();
    let n = phi.h_norm(1.0, 1.0);
    assert!((0.25..=4.0).contains(&n), "{n}");
}

fn put(c: &mut [Complex64], g: &SpectralGrid, kx: i64, ky: i64, v: Complex64) {
    let (nx, ny) = (g.nx() as i64, g.ny() as i64);
    let j = kx.rem_euclid(nx) as usize;
    let m = ky.rem_euclid(ny) as usize;
    c[m * g.nx() + j] = v;
    let j = (-kx).rem_euclid(nx) as usize;
    let m = (-ky).rem_euclid(ny) as usize;
    c[m * g.nx() + j] = v.conj();
}

#[test]
fn lattice_duhamel_matches_picard() {
    let g = SpectralGrid::new(32, 32, 2.0 * PI, 2.0 * PI).unwrap();
    let spec = DispersionSpec::new(-0.5).unwrap();
    let mk = |kx: i64, ky: i64, re: f64, im: f64| Mode { ix: kx, iy: ky, xi: kx as f64, eta: ky as f64, amp: Complex64::new(re, im) };
    let a = [mk(1, 0, 0.3, 0.1), mk(1, 1, -0.2, 0.25)];
    let b = [mk(5, 3, 0.15, -0.05), mk(6, 3, 0.1, 0.2)];
    let mut c = vec![Complex64::new(0.0, 0.0); g.len()];
    for m in a.iter().chain(&b) {
        put(&mut c, &g, m.ix, m.iy, m.amp);
    }
    let psi = Field::from_spectral(&g, c).unwrap();
    let t = 0.4;
    let corr = picard_iterate(&psi, 1, t, &spec, 32).unwrap().sub(&apply_group(&psi, t, &spec)).unwrap();
    let cc = corr.spectral_values();
    let out = duhamel_lattice(&a, &b, t, spec.alpha, 32).unwrap();
    assert_eq!(out.len(), 4);
    for m in out {
        let j = m.ix.rem_euclid(32) as usize;
        let r = m.iy.rem_euclid(32) as usize;
        let want = cc[r * 32 + j];
        assert!((m.amp - want).norm() < 1e-12 * want.norm().max(1e-3), "{:?} vs {want}", m.amp);
    }
}

#[test]
fn frequency_quadrature_matches_time_domain_oracle() {
    let mut prev = f64::INFINITY;
    for n in [4, 8, 16] {
        let p = CounterexampleParams::new(-1.0, 0.01, 32.0, 0.0, 0.0).unwrap();
        let phi = build_phi_hat(&p, &ModeLattice::resolving(&p, n)).unwrap();
        let o = lattice_f3(&phi, p.alpha, 1.0, (0.0, 0.0), 32).unwrap();
        let amp = phi.d1.amp * phi.d2.amp;
        let q = F3Quadrature::default();
        let cont = pair_norm(1.0, &phi.d2.snapped, &phi.d1.snapped, amp, p.theta(), (0.0, 0.0), true, &q).unwrap();
        let rel = (cont / o.norm - 1.0).abs();
        assert!(rel < 0.01 && rel < prev, "n = {n}: {rel}");
        prev = rel;
    }
}

#[test]
fn growth_slope() {
    let q = F3Quadrature::default();
    let ns: Vec<f64> = (6..=12).map(|k| 2f64.powi(k)).collect();
    for (alpha, eps) in [(-1.0, 0.01), (-0.5, 0.02)] {
        let tpl = CounterexampleParams::new(alpha, eps, 64.0, 0.0, 0.0).unwrap();
        let s = growth_sweep(&tpl, &ns, 1.0, 10_000, &q).unwrap();
        assert!((s.slope - s.predicted_slope).abs() < 0.05, "{} vs {}", s.slope, s.predicted_slope);
    }
}
