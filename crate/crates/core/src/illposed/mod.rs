//! The high-low frequency counterexample: resonance function, frequency boxes,
//! the second Duhamel iterate in frequency space and its growth in `N`.

mod chi;
mod f3;
mod oracle;
mod params;
mod phi;
mod sweep;

pub use chi::{chi_bound_scan, eta_roots, resonance_chi, resonance_chi_general, resonance_chi_pair, ChiScan};
pub use f3::{duhamel_kernel, duhamel_kernel_naive, eval_f3_hat, eval_pair_hat, f3_norm, pair_norm, F3Quadrature};
pub use oracle::{duhamel_lattice, lattice_f3, LatticeF3, Mode};
pub use params::{CounterexampleParams, FrequencyBox};
pub use phi::{build_phi_hat, ModeLattice, SparseSpectrum};
pub use sweep::{growth_sweep, write_sweep_csv, GrowthSweep, SweepRow};
