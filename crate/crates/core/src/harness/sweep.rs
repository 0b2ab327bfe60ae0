use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Family, OutputFormat, SolverKind};
use super::seed::trial_seed;
use crate::boolfn::{
    from_file, influence_profile, make_bent, make_delta, make_random, BhspInstance, TruthTable,
};
use crate::error::{Error, Result};
use crate::qsim::Backend;
use crate::solver::{solve_classical, solve_quantum};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest `n` a sweep accepts for state-vector and direct-sampling runs.
pub const MAX_SWEEP_N: usize = 24;
/// Largest `n` for the gate-level backend.
pub const MAX_CIRCUIT_N: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    /// Returned a shift.
    Solved,
    /// Stopped without an answer (promise cutoff or exhausted candidates).
    Gaveup,
    /// Hit the query budget.
    Budget,
    /// Any other solver error.
    Error,
}

impl RunStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunStatus::Solved => "solved",
            RunStatus::Gaveup => "gaveup",
            RunStatus::Budget => "budget",
            RunStatus::Error => "error",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "solved" => Ok(RunStatus::Solved),
            "gaveup" => Ok(RunStatus::Gaveup),
            "budget" => Ok(RunStatus::Budget),
            "error" => Ok(RunStatus::Error),
            other => Err(Error::Config(format!("unknown status `{other}`"))),
        }
    }
}

/// One solver run on one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub trial: u64,
    pub family: Family,
    pub solver: SolverKind,
    pub seed: u64,
    pub gamma_f: f64,
    pub shift: u64,
    pub found: Option<u64>,
    pub status: RunStatus,
    /// `found == Some(shift)`, judged by the harness.
    pub success: bool,
    pub f_queries: u64,
    pub g_queries: u64,
    pub queries: u64,
    pub subroutine_runs: u64,
}

/// Summary statistics of one `(n, solver)` group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub n: usize,
    pub solver: SolverKind,
    pub trials: u64,
    pub mean_queries: f64,
    pub median_queries: f64,
    pub p95_queries: u64,
    pub mean_subroutine_runs: f64,
    pub success_rate: f64,
    pub mean_gamma_f: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema: u32,
    pub rows: Vec<SweepRow>,
    pub aggregates: Vec<Aggregate>,
}

pub fn median(sorted: &[u64]) -> f64 {
    let len = sorted.len();
    assert!(len > 0, "median of empty sample");
    if len % 2 == 1 {
        sorted[len / 2] as f64
    } else {
        (sorted[len / 2 - 1] as f64 + sorted[len / 2] as f64) / 2.0
    }
}

/// Nearest-rank percentile.
pub fn percentile(sorted: &[u64], q: f64) -> u64 {
    let rank = (q * sorted.len() as f64).ceil().max(1.0) as usize;
    sorted[rank.min(sorted.len()) - 1]
}

/// Groups rows by `(n, solver)` and summarizes each group.
pub fn aggregate(rows: &[SweepRow]) -> Vec<Aggregate> {
    let mut groups: BTreeMap<(usize, SolverKind), Vec<&SweepRow>> = BTreeMap::new();
    for row in rows {
        groups.entry((row.n, row.solver)).or_default().push(row);
    }
    groups
        .into_iter()
        .map(|((n, solver), group)| {
            let count = group.len() as f64;
            let mut queries: Vec<u64> = group.iter().map(|r| r.queries).collect();
            queries.sort_unstable();
            Aggregate {
                n,
                solver,
                trials: group.len() as u64,
                mean_queries: queries.iter().sum::<u64>() as f64 / count,
                median_queries: median(&queries),
                p95_queries: percentile(&queries, 0.95),
                mean_subroutine_runs: group.iter().map(|r| r.subroutine_runs).sum::<u64>() as f64
                    / count,
                success_rate: group.iter().filter(|r| r.success).count() as f64 / count,
                mean_gamma_f: group.iter().map(|r| r.gamma_f).sum::<f64>() / count,
            }
        })
        .collect()
}

fn check_capacity(config: &ExperimentConfig, file_n: Option<usize>) -> Result<()> {
    for &n in &config.n_range {
        if n == 0 || n > MAX_SWEEP_N {
            return Err(Error::Capacity(format!(
                "n={n} outside sweep range 1..={MAX_SWEEP_N}"
            )));
        }
        if config.backend == Backend::Circuit && n > MAX_CIRCUIT_N {
            return Err(Error::Capacity(format!(
                "circuit backend limited to n <= {MAX_CIRCUIT_N}, got {n}"
            )));
        }
        if let Some(file_n) = file_n {
            if file_n != n {
                return Err(Error::Config(format!(
                    "file defines n={file_n}, range asks for n={n}"
                )));
            }
        }
    }
    Ok(())
}

/// Builds the instance for `(n, trial)`; the caller keeps the planted shift.
fn generate_instance(
    config: &ExperimentConfig,
    file_table: Option<&TruthTable>,
    n: usize,
    trial: u64,
) -> Result<(BhspInstance, u64)> {
    let seed = trial_seed(config.master_seed, n, trial, "instance");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = match config.family {
        Family::Bent => make_bent(n, rng.gen())?,
        Family::Delta => make_delta(n, rng.gen_range(0..1u64 << n))?,
        Family::Random => loop {
            let f = make_random(n, rng.gen())?;
            if crate::boolfn::well_posed(&f) {
                break f;
            }
        },
        Family::File => file_table.expect("file table loaded").clone(),
    };
    let shift = rng.gen_range(0..1u64 << n);
    Ok((BhspInstance::new(f, shift)?, shift))
}

fn run_trial(
    config: &ExperimentConfig,
    file_table: Option<&TruthTable>,
    n: usize,
    trial: u64,
) -> Result<Vec<SweepRow>> {
    let (instance, shift) = generate_instance(config, file_table, n, trial)?;
    let gamma_f = influence_profile(instance.function()).gamma_min();
    let rows = config
        .solvers
        .iter()
        .map(|&solver| {
            let seed = trial_seed(config.master_seed, n, trial, solver.as_str());
            let before = instance.counts();
            let outcome = match solver {
                SolverKind::Classical => solve_classical(&instance, seed, config.max_queries),
                _ => solve_quantum(&instance, &config.solve_config(solver, seed)),
            };
            let used = instance.counts().since(before);
            let (found, status, subroutine_runs) = match outcome {
                Ok(report) => (
                    report.found_shift,
                    if report.found_shift.is_some() {
                        RunStatus::Solved
                    } else {
                        RunStatus::Gaveup
                    },
                    report.subroutine_runs,
                ),
                Err(Error::Budget { .. }) => (None, RunStatus::Budget, 0),
                Err(_) => (None, RunStatus::Error, 0),
            };
            SweepRow {
                n,
                trial,
                family: config.family.clone(),
                solver,
                seed,
                gamma_f,
                shift,
                found,
                status,
                success: found == Some(shift),
                f_queries: used.f,
                g_queries: used.g,
                queries: used.total(),
                subroutine_runs,
            }
        })
        .collect();
    Ok(rows)
}

/// Runs every `(n, trial)` of the configuration. Trials run in parallel;
/// rows come back sorted by `n`, trial index and solver order.
pub fn run_sweep(config: &ExperimentConfig) -> Result<SweepReport> {
    config.validate()?;
    let file_table = match config.family {
        Family::File => Some(from_file(config.file.as_ref().expect("validated"))?),
        _ => None,
    };
    check_capacity(config, file_table.as_ref().map(TruthTable::n))?;

    let jobs: Vec<(usize, u64)> = config
        .n_range
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    let per_job: Vec<Vec<SweepRow>> = jobs
        .par_iter()
        .map(|&(n, trial)| run_trial(config, file_table.as_ref(), n, trial))
        .collect::<Result<_>>()?;
    let rows: Vec<SweepRow> = per_job.into_iter().flatten().collect();
    let aggregates = aggregate(&rows);
    Ok(SweepReport {
        schema: SCHEMA_VERSION,
        rows,
        aggregates,
    })
}

const CSV_HEADER: &str =
    "n,trial,family,solver,seed,gamma_f,shift,found,status,success,f_queries,g_queries,queries,subroutine_runs";

impl SweepReport {
    /// CSV with a `# schema=1` line, one row per run, then one
    /// `# aggregate,...` comment line per `(n, solver)` group.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# schema={}\n{CSV_HEADER}\n", self.schema);
        for r in &self.rows {
            let found = r.found.map(|f| f.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.trial,
                r.family,
                r.solver,
                r.seed,
                r.gamma_f,
                r.shift,
                found,
                r.status.as_str(),
                r.success as u8,
                r.f_queries,
                r.g_queries,
                r.queries,
                r.subroutine_runs
            )
            .expect("write to string");
        }
        for a in &self.aggregates {
            writeln!(
                out,
                "# aggregate,n={},solver={},trials={},mean_queries={},median_queries={},p95_queries={},mean_subroutine_runs={},success_rate={},mean_gamma_f={}",
                a.n,
                a.solver,
                a.trials,
                a.mean_queries,
                a.median_queries,
                a.p95_queries,
                a.mean_subroutine_runs,
                a.success_rate,
                a.mean_gamma_f
            )
            .expect("write to string");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    /// Parses the CSV form; aggregates are recomputed from the rows.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let schema = match lines.next() {
            Some((_, line)) => line
                .strip_prefix("# schema=")
                .and_then(|v| v.trim().parse::<u32>().ok())
                .ok_or_else(|| Error::Config("missing `# schema=` header".into()))?,
            None => return Err(Error::Config("empty report".into())),
        };
        if schema != SCHEMA_VERSION {
            return Err(Error::Config(format!("unsupported report schema {schema}")));
        }
        let mut rows = Vec::new();
        let mut saw_header = false;
        for (lineno, line) in lines {
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            if !saw_header {
                if line != CSV_HEADER {
                    return Err(Error::Config(format!(
                        "line {}: unexpected header",
                        lineno + 1
                    )));
                }
                saw_header = true;
                continue;
            }
            rows.push(
                parse_row(line).map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?,
            );
        }
        let aggregates = aggregate(&rows);
        Ok(Self {
            schema,
            rows,
            aggregates,
        })
    }
}

fn parse_row(line: &str) -> Result<SweepRow> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 14 {
        return Err(Error::Config(format!(
            "expected 14 fields, got {}",
            fields.len()
        )));
    }
    let num = |i: usize| -> Result<u64> {
        fields[i]
            .parse()
            .map_err(|_| Error::Config(format!("bad integer `{}`", fields[i])))
    };
    Ok(SweepRow {
        n: num(0)? as usize,
        trial: num(1)?,
        family: fields[2].parse()?,
        solver: fields[3].parse()?,
        seed: num(4)?,
        gamma_f: fields[5]
            .parse()
            .map_err(|_| Error::Config(format!("bad gamma `{}`", fields[5])))?,
        shift: num(6)?,
        found: if fields[7].is_empty() {
            None
        } else {
            Some(num(7)?)
        },
        status: RunStatus::parse(fields[8])?,
        success: num(9)? == 1,
        f_queries: num(10)?,
        g_queries: num(11)?,
        queries: num(12)?,
        subroutine_runs: num(13)?,
    })
}
