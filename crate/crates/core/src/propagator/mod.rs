//! Dispersion phase, the linear group, dispersive decay and the oscillatory kernel.

mod decay;
mod group;
mod kernel;
mod reference;

pub use decay::{decay_sup_norm, embed_padded, spectral_extent, DecayProbe, DecaySeries};
pub use group::{apply_group, group_multiplier, phase, phase_table, DispersionSpec};
pub use kernel::{kernel_mollified, kernel_reduced, KernelEval, KernelOptions};
pub use reference::{propagate_at_points, KxZeroRule};
