//! Periodic grid, fields and Fourier multipliers.

mod field;
mod grid;
mod multiplier;
mod ops;
mod snapshot;

pub use field::{Field, Repr};
pub use grid::SpectralGrid;
pub use multiplier::{apply_multiplier, MultiplierSpec, NyquistRule, ZeroModeRule};
pub use ops::{
    bessel, bessel_iso, bona_smith_smooth, deriv_x, deriv_y, frac_deriv_x, hilbert_x, inv_dx,
    inv_dx_dy, japanese, SmoothingParams, INV_DX_TOL,
};
pub use snapshot::{
    decode_header, decode_snapshot, encode_snapshot, read_snapshot, write_snapshot, SnapshotHeader,
    HEADER_LEN, MAGIC,
};

pub fn make_grid(nx: usize, ny: usize, lx: f64, ly: f64) -> crate::Result<SpectralGrid> {
    SpectralGrid::new(nx, ny, lx, ly)
}

pub use grid::wrap;
pub(crate) use field::{forward_raw, inverse_complex, inverse_raw};
