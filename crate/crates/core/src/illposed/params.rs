use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Axis-aligned box in frequency space. The `eta` edges are relative to
/// `eta_anchor`, which keeps box widths of order `gamma^2` exact next to
/// anchors of order `N^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyBox {
    pub xi_lo: f64,
    pub xi_hi: f64,
    pub eta_lo: f64,
    pub eta_hi: f64,
    #[serde(default)]
    pub eta_anchor: f64,
}

impl FrequencyBox {
    pub fn new(xi_lo: f64, xi_hi: f64, eta_lo: f64, eta_hi: f64, eta_anchor: f64) -> Result<Self> {
        if !(xi_lo < xi_hi && eta_lo < eta_hi) {
            return Err(Error::InvalidArgument(format!(
                "empty box [{xi_lo}, {xi_hi}] x [{eta_lo}, {eta_hi}]"
            )));
        }
        Ok(Self { xi_lo, xi_hi, eta_lo, eta_hi, eta_anchor })
    }

    pub fn xi_width(&self) -> f64 {
        self.xi_hi - self.xi_lo
    }

    pub fn eta_width(&self) -> f64 {
        self.eta_hi - self.eta_lo
    }

    pub fn area(&self) -> f64 {
        self.xi_width() * self.eta_width()
    }

    /// Minkowski sum, anchored at the sum of the anchors.
    pub fn sum(&self, o: &FrequencyBox) -> FrequencyBox {
        FrequencyBox {
            xi_lo: self.xi_lo + o.xi_lo,
            xi_hi: self.xi_hi + o.xi_hi,
            eta_lo: self.eta_lo + o.eta_lo,
            eta_hi: self.eta_hi + o.eta_hi,
            eta_anchor: self.eta_anchor + o.eta_anchor,
        }
    }

    pub fn contains(&self, xi: f64, eta_local: f64) -> bool {
        (self.xi_lo..=self.xi_hi).contains(&xi) && (self.eta_lo..=self.eta_hi).contains(&eta_local)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleParams {
    pub alpha: f64,
    pub eps: f64,
    pub big_n: f64,
    #[serde(default)]
    pub s1: f64,
    #[serde(default)]
    pub s2: f64,
}

impl CounterexampleParams {
    pub fn new(alpha: f64, eps: f64, big_n: f64, s1: f64, s2: f64) -> Result<Self> {
        let p = Self { alpha, eps, big_n, s1, s2 };
        p.validate()?;
        Ok(p)
    }

    /// Same construction for `alpha` in `(0, 1]`, outside the range where the
    /// argument applies. The box anchor uses `|theta|`.
    pub fn control(alpha: f64, eps: f64, big_n: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidArgument(format!("control alpha {alpha} outside (0, 1]")));
        }
        let p = Self { alpha, eps, big_n, s1: 0.0, s2: 0.0 };
        p.check_common()?;
        Ok(p)
    }

    fn check_common(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::InvalidArgument(format!("eps = {} outside (0, 1)", self.eps)));
        }
        if !(self.big_n > 1.0 && self.big_n.is_finite()) {
            return Err(Error::InvalidArgument(format!("N = {} must exceed 1", self.big_n)));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= -1.0 && self.alpha < 0.0) {
            return Err(Error::InvalidArgument(format!("alpha = {} outside [-1, 0)", self.alpha)));
        }
        self.check_common()
    }

    pub fn theta(&self) -> f64 {
        -self.alpha
    }

    /// `gamma = N^{-(1+eps)/2}`, i.e. `gamma^2 N = N^{-eps}`.
    pub fn gamma(&self) -> f64 {
        self.big_n.powf(-(1.0 + self.eps) / 2.0)
    }

    pub fn weight2(&self) -> f64 {
        self.big_n.powf(-self.s1 - 0.5 * (3.0 - self.alpha) * self.s2)
    }

    /// `sqrt(3/theta) N^{(3+theta)/2}`
    pub fn eta_anchor(&self) -> f64 {
        let th = self.theta();
        (3.0 / th.abs()).sqrt() * self.big_n.powf(0.5 * (3.0 + th))
    }

    pub fn d1(&self) -> FrequencyBox {
        let g = self.gamma();
        FrequencyBox { xi_lo: 0.5 * g, xi_hi: g, eta_lo: -g * g / 6.0, eta_hi: g * g / 6.0, eta_anchor: 0.0 }
    }

    pub fn d2(&self) -> FrequencyBox {
        let g = self.gamma();
        let n = self.big_n;
        FrequencyBox { xi_lo: n, xi_hi: n + g, eta_lo: 0.0, eta_hi: g * g, eta_anchor: self.eta_anchor() }
    }

    /// `gamma^{3/2} N`, the predicted size of the mixed iterate.
    pub fn predicted_size(&self) -> f64 {
        self.gamma().powf(1.5) * self.big_n
    }

    pub fn predicted_slope(&self) -> f64 {
        (1.0 - 3.0 * self.eps) / 4.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_and_boxes() {
        let p = CounterexampleParams::new(-1.0, 0.01, 256.0, 0.0, 0.0).unwrap();
        let g = p.gamma();
        assert!((g * g * p.big_n - p.big_n.powf(-p.eps)).abs() < 1e-15);
        let d2 = p.d2();
        assert!((d2.eta_anchor - 3f64.sqrt() * 256f64.powi(2)).abs() < 1e-9);
        assert!(d2.area() > 0.0 && p.d1().area() > 0.0);
        assert!(CounterexampleParams::new(0.5, 0.01, 256.0, 0.0, 0.0).is_err());
        assert!(CounterexampleParams::new(-1.0, 0.0, 256.0, 0.0, 0.0).is_err());
        assert!(CounterexampleParams::control(0.5, 0.01, 256.0).is_ok());
        assert!(FrequencyBox::new(1.0, 1.0, 0.0, 1.0, 0.0).is_err());
    }
}
