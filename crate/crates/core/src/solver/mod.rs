//! Hidden shift solvers: the quantum sampling loop (plain, amplified and
//! promise variants) and a classical collision-based baseline.
//!
//! Solvers touch the instance only through counted oracle calls or the
//! simulated sampling circuit. They never read the planted shift.

mod classical;
mod quantum;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

pub use classical::solve_classical;
pub use quantum::{promise_cutoff, solve_promise, solve_quantum};

use crate::error::{Error, Result};
use crate::qsim::Backend;

/// Default constant in the promise-mode cutoff `ceil(C n ln(1/ε) / √δ)`.
pub const PROMISE_CONSTANT: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Plain,
    Amplified,
    Promise,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Plain => "plain",
            Mode::Amplified => "amplified",
            Mode::Promise => "promise",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Mode::Plain),
            "amplified" => Ok(Mode::Amplified),
            "promise" => Ok(Mode::Promise),
            other => Err(Error::Config(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveConfig {
    pub mode: Mode,
    /// Promised lower bound on the minimum influence (promise mode).
    pub delta: f64,
    /// Failure budget (promise mode).
    pub epsilon: f64,
    /// Constant `C` of the promise cutoff.
    pub cutoff_constant: f64,
    pub seed: u64,
    /// Oracle-call cap (f-calls plus g-calls).
    pub max_queries: u64,
    pub backend: Backend,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Plain,
            delta: 1.0 / 3.0,
            epsilon: 0.1,
            cutoff_constant: PROMISE_CONSTANT,
            seed: 0,
            max_queries: u64::MAX,
            backend: Backend::Direct,
        }
    }
}

impl SolveConfig {
    pub fn new(mode: Mode, seed: u64) -> Self {
        Self {
            mode,
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::Config(format!(
                "delta must lie in (0, 1], got {}",
                self.delta
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::Config(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.max_queries == 0 {
            return Err(Error::Config("max_queries must be positive".into()));
        }
        Ok(())
    }
}

/// Record of one solve.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub found_shift: Option<u64>,
    pub f_queries: u64,
    pub g_queries: u64,
    pub subroutine_runs: u64,
    /// Subroutine runs spent at each rank step (length `n` when solved).
    pub trials_per_rank_step: Vec<u64>,
    pub wall_time: Duration,
    pub seed: u64,
}

impl RunReport {
    /// Oracle calls, f-calls plus g-calls.
    pub fn queries(&self) -> u64 {
        self.f_queries + self.g_queries
    }
}
