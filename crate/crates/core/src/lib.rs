//! Pseudospectral lab for the fractional ZK-KP equation
//! `u_t = u_xxx - H D_x^alpha u_yy + u u_x` on a periodic box.

pub mod analysis_norms;
pub mod error;
pub mod evolution;
pub mod harness;
pub mod illposed;
pub mod numerics;
pub mod propagator;
pub mod spectral_core;

pub use error::{Error, Result};
pub use num_complex::Complex64;
