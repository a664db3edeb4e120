//! Riemann zeta for real arguments away from the pole, via Euler-Maclaurin.

/// B_{2k}/(2k)! for k = 1..8
const B2K_FACT: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

pub fn zeta(s: f64) -> f64 {
    assert!((s - 1.0).abs() > 1e-12, "pole at s = 1");
    let n = 20usize;
    let nf = n as f64;
    let mut sum: f64 = (1..n).map(|k| (k as f64).powf(-s)).sum();
    sum += nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
    // rising factorial s (s+1) ... (s+2k-2)
    let mut rising = s;
    let mut power = nf.powf(-s - 1.0);
    for (k, c) in B2K_FACT.iter().enumerate() {
        sum += c * rising * power;
        let j = 2 * k as i32 + 1;
        rising *= (s + j as f64) * (s + j as f64 + 1.0);
        power /= nf * nf;
    }
    sum
}
