//! Anisotropic function-space norms, mixed space-time norms and inequality probes.

mod norms;
mod probe;

pub use norms::{
    h_norm, lp_norm, mixed_norm, mixed_norm_series, norm, Family, MixedNormSpec, SobolevIndex,
};
pub use probe::{gn_lhs, gn_rhs, probe_inequality, ProbeReport};
