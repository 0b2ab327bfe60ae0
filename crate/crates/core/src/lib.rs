//! Simulation and empirical validation of the quantum algorithm for the
//! Boolean hidden shift problem: given oracles for `f` and `g(x) = f(x ^ s)`,
//! recover `s`.
//!
//! - [`boolfn`]: truth tables, Walsh-Hadamard spectra, influences, instances.
//! - [`gf2`]: incremental GF(2) basis used to solve for the shift.
//! - [`qsim`]: state-vector simulation of the sampling circuit.
//! - [`solver`]: quantum and classical solvers.
//! - [`harness`]: seeded experiments, invariant checks and scaling fits.

pub mod boolfn;
pub mod error;
pub mod gf2;
pub mod harness;
pub mod qsim;
pub mod solver;

pub use error::{Error, Result};
