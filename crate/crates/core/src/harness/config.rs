//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # comments and blank lines are ignored
//! family = random          # bent | delta | random | file
//! file = table.txt         # required when family = file
//! n = 8,10,12-16:2         # comma list; `a-b` or `a-b:step` ranges
//! trials = 200
//! solvers = plain,classical
//! delta = 0.3333333333333333
//! epsilon = 0.1
//! cutoff_constant = 4
//! max_queries = 100000000
//! backend = direct         # direct | circuit
//! seed = 42
//! output = sweep.csv
//! format = csv             # csv | json
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::Backend;
use crate::solver::{Mode, SolveConfig, PROMISE_CONSTANT};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Bent,
    Delta,
    Random,
    File,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Bent => "bent",
            Family::Delta => "delta",
            Family::Random => "random",
            Family::File => "file",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bent" => Ok(Family::Bent),
            "delta" => Ok(Family::Delta),
            "random" => Ok(Family::Random),
            "file" => Ok(Family::File),
            other => Err(Error::Config(format!("unknown family `{other}`"))),
        }
    }
}

/// A solver run on every instance of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Plain,
    Amplified,
    Promise,
    Classical,
}

impl SolverKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverKind::Plain => "plain",
            SolverKind::Amplified => "amplified",
            SolverKind::Promise => "promise",
            SolverKind::Classical => "classical",
        }
    }

    pub fn mode(&self) -> Option<Mode> {
        match self {
            SolverKind::Plain => Some(Mode::Plain),
            SolverKind::Amplified => Some(Mode::Amplified),
            SolverKind::Promise => Some(Mode::Promise),
            SolverKind::Classical => None,
        }
    }

    pub fn is_quantum(&self) -> bool {
        self.mode().is_some()
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(SolverKind::Classical),
            other => other.parse::<Mode>().map(|m| match m {
                Mode::Plain => SolverKind::Plain,
                Mode::Amplified => SolverKind::Amplified,
                Mode::Promise => SolverKind::Promise,
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub family: Family,
    pub file: Option<PathBuf>,
    pub n_range: Vec<usize>,
    pub trials: u64,
    pub solvers: Vec<SolverKind>,
    pub delta: f64,
    pub epsilon: f64,
    pub cutoff_constant: f64,
    pub max_queries: u64,
    pub backend: Backend,
    pub master_seed: u64,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            family: Family::Random,
            file: None,
            n_range: vec![8],
            trials: 100,
            solvers: vec![SolverKind::Plain],
            delta: 1.0 / 3.0,
            epsilon: 0.1,
            cutoff_constant: PROMISE_CONSTANT,
            max_queries: 1 << 40,
            backend: Backend::Direct,
            master_seed: 0,
            output: None,
            format: OutputFormat::Csv,
        }
    }
}

fn parse_n_range(value: &str) -> Result<Vec<usize>> {
    let bad = || Error::Config(format!("invalid n range `{value}`"));
    let mut out = Vec::new();
    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, rest)) = item.split_once('-') {
            let (hi, step) = match rest.split_once(':') {
                Some((hi, step)) => (hi, step.trim().parse::<usize>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let lo: usize = lo.trim().parse().map_err(|_| bad())?;
            let hi: usize = hi.trim().parse().map_err(|_| bad())?;
            if step == 0 || lo > hi {
                return Err(bad());
            }
            out.extend((lo..=hi).step_by(step));
        } else {
            out.push(item.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

fn parse_number<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("invalid value `{value}` for `{key}`")))
}

impl ExperimentConfig {
    /// Parses the flat format; relative `file`/`output` paths resolve against `base`.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut config = Self::default();
        let resolve = |p: &str| match base {
            Some(dir) if Path::new(p).is_relative() => dir.join(p),
            _ => PathBuf::from(p),
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "family" => config.family = value.parse()?,
                "file" => config.file = Some(resolve(value)),
                "n" | "n_range" => config.n_range = parse_n_range(value)?,
                "trials" => config.trials = parse_number(key, value)?,
                "solvers" | "mode" => {
                    config.solvers = value
                        .split(',')
                        .map(|s| s.trim().parse())
                        .collect::<Result<Vec<_>>>()?
                }
                "delta" => config.delta = parse_number(key, value)?,
                "epsilon" => config.epsilon = parse_number(key, value)?,
                "cutoff_constant" => config.cutoff_constant = parse_number(key, value)?,
                "max_queries" => config.max_queries = parse_number(key, value)?,
                "backend" => {
                    config.backend = match value {
                        "direct" => Backend::Direct,
                        "circuit" => Backend::Circuit,
                        other => return Err(Error::Config(format!("unknown backend `{other}`"))),
                    }
                }
                "seed" | "master_seed" => config.master_seed = parse_number(key, value)?,
                "output" => config.output = Some(resolve(value)),
                "format" => {
                    config.format = match value {
                        "csv" => OutputFormat::Csv,
                        "json" => OutputFormat::Json,
                        other => return Err(Error::Config(format!("unknown format `{other}`"))),
                    }
                }
                other => return Err(Error::Config(format!("unknown key `{other}`"))),
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, path.parent())
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.n_range.is_empty() {
            return Err(Error::Config("n range is empty".into()));
        }
        if self.solvers.is_empty() {
            return Err(Error::Config("no solvers configured".into()));
        }
        if self.family == Family::File && self.file.is_none() {
            return Err(Error::Config("family = file needs a `file` entry".into()));
        }
        if self.family == Family::Bent {
            if let Some(n) = self.n_range.iter().find(|&&n| n % 2 != 0) {
                return Err(Error::Config(format!("bent family needs even n, got {n}")));
            }
        }
        self.solve_config(SolverKind::Plain, 0).validate()
    }

    /// Solver settings for one run.
    pub fn solve_config(&self, kind: SolverKind, seed: u64) -> SolveConfig {
        SolveConfig {
            mode: kind.mode().unwrap_or(Mode::Plain),
            delta: self.delta,
            epsilon: self.epsilon,
            cutoff_constant: self.cutoff_constant,
            seed,
            max_queries: self.max_queries,
            backend: self.backend,
        }
    }
}
