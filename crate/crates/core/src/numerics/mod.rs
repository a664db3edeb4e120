//! Small numerical helpers shared by the modules.

pub mod fit;
pub mod lowdisc;
pub mod quad;
pub mod special;

pub use fit::{fit_line, fit_loglog, LineFit};
pub use quad::{gauss_legendre, GaussKronrod, QuadResult};
