use frakzk::analysis_norms::*;
use frakzk::spectral_core::{inv_dx, Field, SpectralGrid};
use frakzk::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random field without kx = 0 content, so every family is defined.
fn zero_mean_field(seed: u64) -> Field {
    let g = SpectralGrid::new(32, 32, 12.0, 9.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v: Vec<f64> = (0..g.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut c = Field::from_physical(&g, v).unwrap().into_spectral_values();
    for m in 0..g.ny() {
        c[m * g.nx()] = Complex64::default();
    }
    Field::from_spectral(&g, c).unwrap().to_physical()
}

const FAMILIES: [Family; 7] =
    [Family::H, Family::X, Family::Xhat, Family::Xalpha, Family::XalphaPrinted, Family::Y, Family::Yhat];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zero_index_h_norm_is_root_two_l2(seed in any::<u64>()) {
        // the H^{s1,s2} weight <xi>^{2 s1} + <eta>^{2 s2} equals 2 at s = 0
        let f = zero_mean_field(seed);
        let h = norm(&f, &SobolevIndex::h(0.0, 0.0)).unwrap();
        let l2 = lp_norm(&f, 2.0);
        prop_assert!((h - 2f64.sqrt() * l2).abs() <= 1e-12 * l2);
    }

    #[test]
    fn triangle_inequality(a in any::<u64>(), b in any::<u64>(), s1 in 0.0f64..2.0, s2 in 0.0f64..2.0, alpha in -1.0f64..=1.0) {
        let (f, g) = (zero_mean_field(a), zero_mean_field(b));
        let sum = f.add(&g).unwrap();
        for fam in FAMILIES {
            let idx = SobolevIndex::new(s1, s2, fam, alpha).unwrap();
            let (x, y, z) = (norm(&f, &idx).unwrap(), norm(&g, &idx).unwrap(), norm(&sum, &idx).unwrap());
            prop_assert!(z <= x + y + 1e-11 * (x + y), "{fam:?}");
        }
    }

    #[test]
    fn family_monotonicity(seed in any::<u64>(), s1 in 0.0f64..2.0, s2 in 0.0f64..2.0) {
        let f = zero_mean_field(seed);
        let h = h_norm(&f, s1, s2);
        let x = norm(&f, &SobolevIndex::new(s1, s2, Family::X, 1.0).unwrap()).unwrap();
        let extra = h_norm(&inv_dx(&f).unwrap(), s1, s2);
        prop_assert!(h <= x);
        prop_assert!((x - (h * h + extra * extra).sqrt()).abs() <= 1e-14 * x);
    }

    #[test]
    fn h_norms_interpolate(seed in any::<u64>(), th in 0.0f64..1.0, a1 in 0.0f64..2.0, a2 in 0.0f64..2.0, b1 in 0.0f64..2.0, b2 in 0.0f64..2.0) {
        // log-convexity along segments of (s1, s2)
        let f = zero_mean_field(seed);
        let mid = h_norm(&f, (1.0 - th) * a1 + th * b1, (1.0 - th) * a2 + th * b2);
        let bound = h_norm(&f, a1, a2).powf(1.0 - th) * h_norm(&f, b1, b2).powf(th);
        prop_assert!(mid <= bound * (1.0 + 1e-12));
    }
}

#[test]
fn mixed_norm_of_constant_series() {
    let times: Vec<f64> = (0..=10).map(|i| i as f64 * 0.2).collect();
    let vals = vec![3.0; times.len()];
    let v = mixed_norm_series(&times, &vals, 2.0).unwrap();
    assert!((v - 3.0 * 2f64.sqrt()).abs() < 1e-12);
    let v = mixed_norm_series(&times, &vals, f64::INFINITY).unwrap();
    assert_eq!(v, 3.0);
}

#[test]
fn families_reject_nonzero_x_mean() {
    let g = SpectralGrid::new(16, 16, 6.0, 6.0).unwrap();
    let f = Field::from_fn(&g, |x, y| 1.0 + (x + y).cos());
    assert!(norm(&f, &SobolevIndex::new(1.0, 1.0, Family::X, 1.0).unwrap()).is_err());
    assert!(norm(&f, &SobolevIndex::new(1.0, 1.0, Family::Y, 1.0).unwrap()).is_err());
    assert!(norm(&f, &SobolevIndex::h(1.0, 1.0)).is_ok());
}
