/// Additive recurrence with the plastic-number constants (the "R2" sequence);
/// points are well spread in the unit square for any prefix length.
pub struct R2 {
    i: u64,
    offset: [f64; 2],
}

const G: f64 = 1.324_717_957_244_746;

impl R2 {
    pub fn new(seed_offset: [f64; 2]) -> Self {
        Self { i: 0, offset: seed_offset }
    }
}

impl Iterator for R2 {
    type Item = [f64; 2];
    fn next(&mut self) -> Option<[f64; 2]> {
        self.i += 1;
        let n = self.i as f64;
        let a = (self.offset[0] + n / G).fract();
        let b = (self.offset[1] + n / (G * G)).fract();
        Some([a, b])
    }
}

/// Four-dimensional Kronecker sequence built from the generalized golden
/// ratio of order 4.
pub struct Kronecker4 {
    i: u64,
    alpha: [f64; 4],
    offset: [f64; 4],
}

impl Kronecker4 {
    pub fn new(offset: [f64; 4]) -> Self {
        // root of x^5 = x + 1
        let mut phi: f64 = 1.2;
        for _ in 0..60 {
            phi -= (phi.powi(5) - phi - 1.0) / (5.0 * phi.powi(4) - 1.0);
        }
        let alpha = [1.0 / phi, 1.0 / phi.powi(2), 1.0 / phi.powi(3), 1.0 / phi.powi(4)];
        Self { i: 0, alpha, offset }
    }
}

impl Iterator for Kronecker4 {
    type Item = [f64; 4];
    fn next(&mut self) -> Option<[f64; 4]> {
        self.i += 1;
        let n = self.i as f64;
        let mut out = [0.0; 4];
        for d in 0..4 {
            out[d] = (self.offset[d] + n * self.alpha[d]).fract();
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fills_square_evenly() {
        let mut counts = [0usize; 16];
        for p in R2::new([0.5, 0.5]).take(16_000) {
            let cx = (p[0] * 4.0) as usize;
            let cy = (p[1] * 4.0) as usize;
            counts[cy * 4 + cx] += 1;
        }
        for c in counts {
            assert!((c as i64 - 1000).abs() < 30, "{c}");
        }
    }

    #[test]
    fn kronecker_in_unit_cube() {
        for p in Kronecker4::new([0.1; 4]).take(1000) {
            assert!(p.iter().all(|v| (0.0..1.0).contains(v)));
        }
    }
}
