use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::SolverKind;
use super::sweep::{median, SweepRow};
use crate::error::{Error, Result};

pub const MIN_DISTINCT_N: usize = 4;
const BOOTSTRAP_RESAMPLES: usize = 1000;
const BOOTSTRAP_SEED: u64 = 0x5eed;

/// What is regressed against `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitKind {
    /// `log2(median queries)`; classical rows.
    Log2Median,
    /// `median queries`; quantum rows.
    Median,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingFit {
    pub solver: SolverKind,
    pub kind: FitKind,
    pub slope: f64,
    pub intercept: f64,
    /// 95% percentile-bootstrap interval of the slope.
    pub ci_low: f64,
    pub ci_high: f64,
    /// Root-mean-square residual of the fitted points.
    pub rms_residual: f64,
    /// `(n, regressed value)` per distinct `n`.
    pub points: Vec<(usize, f64)>,
}

/// Ordinary least squares `y = intercept + slope x`.
pub fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let len = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / len;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    (slope, mean_y - slope * mean_x)
}

fn group_value(kind: FitKind, queries: &mut [u64]) -> f64 {
    queries.sort_unstable();
    let m = median(queries);
    match kind {
        FitKind::Log2Median => m.max(1.0).log2(),
        FitKind::Median => m,
    }
}

fn fit_group(solver: SolverKind, by_n: &BTreeMap<usize, Vec<u64>>) -> ScalingFit {
    let kind = if solver.is_quantum() {
        FitKind::Median
    } else {
        FitKind::Log2Median
    };
    let points: Vec<(usize, f64)> = by_n
        .iter()
        .map(|(&n, q)| (n, group_value(kind, &mut q.clone())))
        .collect();
    let xy: Vec<(f64, f64)> = points.iter().map(|&(n, y)| (n as f64, y)).collect();
    let (slope, intercept) = least_squares(&xy);
    let rms_residual = (xy
        .iter()
        .map(|&(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / xy.len() as f64)
        .sqrt();

    let mut rng = ChaCha8Rng::seed_from_u64(BOOTSTRAP_SEED);
    let mut slopes: Vec<f64> = (0..BOOTSTRAP_RESAMPLES)
        .map(|_| {
            let resampled: Vec<(f64, f64)> = by_n
                .iter()
                .map(|(&n, q)| {
                    let mut draw: Vec<u64> =
                        (0..q.len()).map(|_| q[rng.gen_range(0..q.len())]).collect();
                    (n as f64, group_value(kind, &mut draw))
                })
                .collect();
            least_squares(&resampled).0
        })
        .collect();
    slopes.sort_by(f64::total_cmp);
    let at = |q: f64| slopes[((q * slopes.len() as f64) as usize).min(slopes.len() - 1)];

    ScalingFit {
        solver,
        kind,
        slope,
        intercept,
        ci_low: at(0.025),
        ci_high: at(0.975),
        rms_residual,
        points,
    }
}

/// Scaling fits per solver: classical rows regress `log2(median queries)`
/// on `n`, quantum rows regress `median queries` on `n`.
pub fn fit_scaling(rows: &[SweepRow]) -> Result<Vec<ScalingFit>> {
    let mut groups: BTreeMap<SolverKind, BTreeMap<usize, Vec<u64>>> = BTreeMap::new();
    for row in rows {
        groups
            .entry(row.solver)
            .or_default()
            .entry(row.n)
            .or_default()
            .push(row.queries);
    }
    if groups.is_empty() {
        return Err(Error::InsufficientCoverage {
            needed: MIN_DISTINCT_N,
            got: 0,
        });
    }
    groups
        .iter()
        .map(|(&solver, by_n)| {
            if by_n.len() < MIN_DISTINCT_N {
                return Err(Error::InsufficientCoverage {
                    needed: MIN_DISTINCT_N,
                    got: by_n.len(),
                });
            }
            Ok(fit_group(solver, by_n))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::Family;
    use crate::harness::sweep::RunStatus;

    fn row(n: usize, solver: SolverKind, queries: u64) -> SweepRow {
        SweepRow {
            n,
            trial: 0,
            family: Family::Random,
            solver,
            seed: 0,
            gamma_f: 0.5,
            shift: 0,
            found: Some(0),
            status: RunStatus::Solved,
            success: true,
            f_queries: queries / 2,
            g_queries: queries / 2,
            queries,
            subroutine_runs: 0,
        }
    }

    #[test]
    fn exact_exponential_has_exact_slope() {
        let rows: Vec<SweepRow> = [8, 10, 12, 14]
            .iter()
            .flat_map(|&n| (0..5).map(move |_| row(n, SolverKind::Classical, 1 << (n / 2))))
            .collect();
        let fits = fit_scaling(&rows).unwrap();
        assert_eq!(fits.len(), 1);
        assert!((fits[0].slope - 0.5).abs() < 1e-12);
        assert!((fits[0].ci_low - 0.5).abs() < 1e-12 && (fits[0].ci_high - 0.5).abs() < 1e-12);
        assert!(fits[0].rms_residual < 1e-12);
    }

    #[test]
    fn quantum_rows_fit_linearly() {
        let rows: Vec<SweepRow> = (4..=10)
            .flat_map(|n| (0..3).map(move |k| row(n, SolverKind::Plain, 2 * n as u64 + k)))
            .collect();
        let fit = &fit_scaling(&rows).unwrap()[0];
        assert_eq!(fit.kind, FitKind::Median);
        assert!((fit.slope - 2.0).abs() < 1e-12);
    }

    #[test]
    fn single_n_is_insufficient() {
        let rows = vec![row(8, SolverKind::Plain, 20), row(8, SolverKind::Plain, 22)];
        assert_eq!(
            fit_scaling(&rows).unwrap_err(),
            Error::InsufficientCoverage { needed: 4, got: 1 }
        );
        assert!(fit_scaling(&[]).is_err());
    }
}
