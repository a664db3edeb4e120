use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::field::Field;
use super::grid::SpectralGrid;
use crate::{Error, Result};

type Symbol = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;

/// Value used on the kx = 0 plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroModeRule {
    /// evaluate the symbol there
    Symbol,
    /// fixed value on the whole plane
    Value(Complex64),
}

/// Which Nyquist lines the multiplier annihilates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NyquistRule {
    Keep,
    ZeroX,
    ZeroY,
    ZeroBoth,
}

impl NyquistRule {
    fn union(self, o: NyquistRule) -> NyquistRule {
        use NyquistRule::*;
        let x = matches!(self, ZeroX | ZeroBoth) || matches!(o, ZeroX | ZeroBoth);
        let y = matches!(self, ZeroY | ZeroBoth) || matches!(o, ZeroY | ZeroBoth);
        match (x, y) {
            (true, true) => ZeroBoth,
            (true, false) => ZeroX,
            (false, true) => ZeroY,
            (false, false) => Keep,
        }
    }
}

/// A Fourier multiplier: a symbol on (kx, ky) plus lattice conventions.
#[derive(Clone)]
pub struct MultiplierSpec {
    symbol: Symbol,
    pub zero_mode: ZeroModeRule,
    pub nyquist: NyquistRule,
}

impl fmt::Debug for MultiplierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplierSpec")
            .field("zero_mode", &self.zero_mode)
            .field("nyquist", &self.nyquist)
            .finish_non_exhaustive()
    }
}

impl MultiplierSpec {
    pub fn new(
        symbol: impl Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
        zero_mode: ZeroModeRule,
        nyquist: NyquistRule,
    ) -> Self {
        Self { symbol: Arc::new(symbol), zero_mode, nyquist }
    }

    /// Real-valued symbol convenience constructor.
    pub fn real(
        symbol: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        zero_mode: ZeroModeRule,
        nyquist: NyquistRule,
    ) -> Self {
        Self::new(move |a, b| Complex64::new(symbol(a, b), 0.0), zero_mode, nyquist)
    }

    pub fn identity() -> Self {
        Self::real(|_, _| 1.0, ZeroModeRule::Symbol, NyquistRule::Keep)
    }

    pub fn value(&self, kx: f64, ky: f64) -> Complex64 {
        if kx == 0.0 {
            if let ZeroModeRule::Value(v) = self.zero_mode {
                return v;
            }
        }
        (self.symbol)(kx, ky)
    }

    /// Pointwise product; each factor keeps its own kx = 0 rule and the
    /// Nyquist rules combine.
    pub fn then(&self, other: &MultiplierSpec) -> MultiplierSpec {
        let (a, b) = (self.clone(), other.clone());
        MultiplierSpec::new(
            move |kx, ky| a.value(kx, ky) * b.value(kx, ky),
            ZeroModeRule::Symbol,
            self.nyquist.union(other.nyquist),
        )
    }

    /// Symbol table on the grid (row-major, y outer).
    pub fn table(&self, grid: &SpectralGrid) -> Result<Vec<Complex64>> {
        let (nx, ny) = (grid.nx(), grid.ny());
        let zero_x = matches!(self.nyquist, NyquistRule::ZeroX | NyquistRule::ZeroBoth);
        let zero_y = matches!(self.nyquist, NyquistRule::ZeroY | NyquistRule::ZeroBoth);
        let mut t = Vec::with_capacity(nx * ny);
        for m in 0..ny {
            let ky = grid.ky()[m];
            for j in 0..nx {
                let kx = grid.kx()[j];
                if (zero_x && grid.is_nyquist_x(j)) || (zero_y && grid.is_nyquist_y(m)) {
                    t.push(Complex64::default());
                    continue;
                }
                let v = self.value(kx, ky);
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::NonFiniteSymbol { kx, ky });
                }
                t.push(v);
            }
        }
        if cfg!(debug_assertions) {
            check_hermitian(grid, &t)?;
        }
        Ok(t)
    }
}

fn check_hermitian(grid: &SpectralGrid, t: &[Complex64]) -> Result<()> {
    let nx = grid.nx();
    let scale = t.iter().fold(1.0f64, |a, v| a.max(v.norm()));
    for m in 0..grid.ny() {
        for j in 0..nx {
            let (jm, mm) = grid.mirror(j, m);
            let d = (t[mm * nx + jm] - t[m * nx + j].conj()).norm();
            if d > 1e-12 * scale {
                return Err(Error::NonHermitianSymbol { kx: grid.kx()[j], ky: grid.ky()[m] });
            }
        }
    }
    Ok(())
}

pub(crate) fn apply_table(f: &Field, table: &[Complex64]) -> Field {
    let was_physical = f.is_physical();
    let mut c = f.spectral_values().into_owned();
    for (v, m) in c.iter_mut().zip(table) {
        *v *= m;
    }
    let out = Field::from_spectral(f.grid(), c).expect("sizes match");
    if was_physical {
        out.inverse().expect("spectral")
    } else {
        out
    }
}

/// Multiplies the spectral coefficients by the symbol. The output keeps the
/// representation of the input.
pub fn apply_multiplier(f: &Field, m: &MultiplierSpec) -> Result<Field> {
    let table = m.table(f.grid())?;
    Ok(apply_table(f, &table))
}

impl Field {
    pub fn apply(&self, m: &MultiplierSpec) -> Result<Field> {
        apply_multiplier(self, m)
    }
}
