use serde::{Deserialize, Serialize};

use super::params::{CounterexampleParams, FrequencyBox};
use crate::spectral_core::japanese;
use crate::{Error, Result};

/// Frequency lattice spacing of a periodic box of size `(2 pi / dkx, 2 pi / dky)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeLattice {
    pub dkx: f64,
    pub dky: f64,
}

impl ModeLattice {
    /// Spacing giving `n` lattice points across the narrower side of `D1` in each direction.
    pub fn resolving(p: &CounterexampleParams, n: usize) -> Self {
        let d1 = p.d1();
        Self { dkx: d1.xi_width() / n as f64, dky: d1.eta_width() / n as f64 }
    }
}

/// Lattice modes of one box, with the box snapped so that its edges sit half-way
/// between lattice points and every cell lies inside it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxModes {
    pub snapped: FrequencyBox,
    pub ix: (i64, i64),
    pub iy: (i64, i64),
    pub amp: f64,
}

impl BoxModes {
    fn new(b: &FrequencyBox, lat: &ModeLattice, amp: f64) -> Result<Self> {
        let ix = ((b.xi_lo / lat.dkx).ceil() as i64, (b.xi_hi / lat.dkx).floor() as i64);
        let iy = ((b.eta_lo / lat.dky).ceil() as i64, (b.eta_hi / lat.dky).floor() as i64);
        let (nx, ny) = (ix.1 - ix.0 + 1, iy.1 - iy.0 + 1);
        if nx < 4 || ny < 4 {
            return Err(Error::BoxUnresolvable(format!(
                "{nx} x {ny} lattice points in a box of {} x {}",
                b.xi_width(),
                b.eta_width()
            )));
        }
        let snapped = FrequencyBox {
            xi_lo: (ix.0 as f64 - 0.5) * lat.dkx,
            xi_hi: (ix.1 as f64 + 0.5) * lat.dkx,
            eta_lo: (iy.0 as f64 - 0.5) * lat.dky,
            eta_hi: (iy.1 as f64 + 0.5) * lat.dky,
            eta_anchor: b.eta_anchor,
        };
        Ok(Self { snapped, ix, iy, amp })
    }

    pub fn count(&self) -> usize {
        ((self.ix.1 - self.ix.0 + 1) * (self.iy.1 - self.iy.0 + 1)) as usize
    }

    /// `(ix, iy)` lattice indices; `eta = anchor + iy * dky`.
    pub fn indices(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.iy.0..=self.iy.1).flat_map(move |iy| (self.ix.0..=self.ix.1).map(move |ix| (ix, iy)))
    }
}

/// The data `gamma^{-3/2} 1_{D1} + gamma^{-3/2} weight2 1_{D2}` sampled on a lattice. The
/// conjugate mirror boxes that make the function real are implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseSpectrum {
    pub lattice: ModeLattice,
    pub d1: BoxModes,
    pub d2: BoxModes,
}

impl SparseSpectrum {
    fn box_norm2(&self, b: &BoxModes, s1: f64, s2: f64) -> f64 {
        let cell = self.lattice.dkx * self.lattice.dky;
        b.indices()
            .map(|(ix, iy)| {
                let xi = ix as f64 * self.lattice.dkx;
                let eta = b.snapped.eta_anchor + iy as f64 * self.lattice.dky;
                (japanese(xi).powf(2.0 * s1) + japanese(eta).powf(2.0 * s2)) * b.amp * b.amp * cell
            })
            .sum()
    }

    /// Squared-norm contributions of the two boxes, each counted with its mirror image.
    pub fn norm2_split(&self, s1: f64, s2: f64) -> (f64, f64) {
        (2.0 * self.box_norm2(&self.d1, s1, s2), 2.0 * self.box_norm2(&self.d2, s1, s2))
    }

    pub fn h_norm(&self, s1: f64, s2: f64) -> f64 {
        let (a, b) = self.norm2_split(s1, s2);
        (a + b).sqrt()
    }

    /// Plain `L2` norm.
    pub fn l2_norm(&self) -> f64 {
        let cell = self.lattice.dkx * self.lattice.dky;
        let n2 = self.d1.amp.powi(2) * self.d1.count() as f64 + self.d2.amp.powi(2) * self.d2.count() as f64;
        (2.0 * n2 * cell).sqrt()
    }
}

pub fn build_phi_hat(p: &CounterexampleParams, lattice: &ModeLattice) -> Result<SparseSpectrum> {
    if !(lattice.dkx > 0.0 && lattice.dky > 0.0) {
        return Err(Error::InvalidArgument("lattice spacings must be positive".into()));
    }
    let a = p.gamma().powf(-1.5);
    Ok(SparseSpectrum {
        lattice: *lattice,
        d1: BoxModes::new(&p.d1(), lattice, a)?,
        d2: BoxModes::new(&p.d2(), lattice, a * p.weight2())?,
    })
}
