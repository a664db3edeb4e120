//! Nonlinear evolution by integrating-factor RK4, trajectories and Picard iterates.

mod diagnostics;
mod picard;
mod stepper;
mod trajectory;

pub use diagnostics::{diagnostics, hamiltonian, Diagnostics};
pub use picard::picard_iterate;
pub use stepper::{dealias_mask, nonlinear_term, nonlinear_term_with, step_ifrk4, IfRk4, SolverConfig, C_STAB};
pub use trajectory::{evolve, write_trajectory, Trajectory};
