//! Seeded experiments, the invariant suite and scaling fits.

mod config;
mod fit;
mod seed;
mod sweep;
mod verify;

pub use config::{ExperimentConfig, Family, OutputFormat, SolverKind};
pub use fit::{fit_scaling, least_squares, FitKind, ScalingFit, MIN_DISTINCT_N};
pub use seed::{mix64, trial_seed};
pub use sweep::{
    aggregate, median, percentile, run_sweep, Aggregate, RunStatus, SweepReport, SweepRow,
    MAX_CIRCUIT_N, MAX_SWEEP_N, SCHEMA_VERSION,
};
pub use verify::{corpus, verify_corpus, CheckResult, Transform, VerifyOptions, VerifySummary};
