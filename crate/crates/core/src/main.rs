use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hidden_shift::boolfn::{
    from_file, influence_profile, make_bent, make_delta, make_random, well_posed, wht,
    BhspInstance, TruthTable,
};
use hidden_shift::harness::{
    fit_scaling, run_sweep, verify_corpus, ExperimentConfig, FitKind, SweepReport, VerifyOptions,
};
use hidden_shift::solver::{solve_classical, solve_quantum, Mode, SolveConfig};
use hidden_shift::Error;

const EXIT_SOLVER: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hidden-shift",
    version,
    about = "Boolean hidden shift experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Bent,
    Delta,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Plain,
    Amplified,
    Promise,
    Classical,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance.
    Solve {
        #[arg(long, value_enum, default_value = "random", conflicts_with = "file")]
        family: FamilyArg,
        /// Truth-table file for f.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Hidden shift as hex, or `random`.
        #[arg(long, default_value = "random")]
        shift: String,
        #[arg(long, value_enum, default_value = "plain")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1.0 / 3.0)]
        delta: f64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = u64::MAX)]
        max_queries: u64,
    },
    /// Export the Walsh-Hadamard spectrum of a truth-table file.
    Spectrum {
        #[arg(long)]
        file: PathBuf,
        /// CSV output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded experiment sweep.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the invariant suite on the built-in corpus.
    Verify,
    /// Fit query scaling from a sweep CSV.
    Fit {
        #[arg(long)]
        report: PathBuf,
    },
}

fn input_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_INPUT)
}

fn parse_shift(text: &str, n: usize, rng: &mut ChaCha8Rng) -> Result<u64, Error> {
    if text == "random" {
        return Ok(rng.gen_range(0..1u64 << n));
    }
    let digits = text.trim_start_matches("0x");
    let s = u64::from_str_radix(digits, 16)
        .map_err(|_| Error::Argument(format!("invalid shift `{text}`")))?;
    if s >> n != 0 {
        return Err(Error::Argument(format!("shift {text} exceeds {n} bits")));
    }
    Ok(s)
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    family: FamilyArg,
    file: Option<PathBuf>,
    n: usize,
    shift: String,
    mode: ModeArg,
    delta: f64,
    epsilon: f64,
    seed: u64,
    max_queries: u64,
) -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f: Result<TruthTable, Error> = match (&file, family) {
        (Some(path), _) => from_file(path),
        (None, FamilyArg::Bent) => make_bent(n, rng.gen()),
        (None, FamilyArg::Delta) => make_delta(n, rng.gen_range(0..1u64 << n.min(63))),
        (None, FamilyArg::Random) => (|| loop {
            let f = make_random(n, rng.gen())?;
            if well_posed(&f) {
                return Ok(f);
            }
        })(),
    };
    let f = match f {
        Ok(f) => f,
        Err(e) => return input_error(e),
    };
    let n = f.n();
    let s = match parse_shift(&shift, n, &mut rng) {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    let gamma_f = influence_profile(&f).gamma_min();
    let instance = match BhspInstance::new(f, s) {
        Ok(i) => i,
        Err(e) => return input_error(e),
    };
    let solver_seed = rng.gen();
    let result = match mode {
        ModeArg::Classical => solve_classical(&instance, solver_seed, max_queries),
        quantum => {
            let mode = match quantum {
                ModeArg::Plain => Mode::Plain,
                ModeArg::Amplified => Mode::Amplified,
                _ => Mode::Promise,
            };
            let config = SolveConfig {
                delta,
                epsilon,
                max_queries,
                ..SolveConfig::new(mode, solver_seed)
            };
            solve_quantum(&instance, &config)
        }
    };
    match result {
        Ok(report) => {
            println!("n={n}");
            println!("gamma_f={gamma_f}");
            println!("shift={s:x}");
            match report.found_shift {
                Some(found) => println!("found={found:x}"),
                None => println!("found=none"),
            }
            println!("f_queries={}", report.f_queries);
            println!("g_queries={}", report.g_queries);
            println!("queries={}", report.queries());
            println!("subroutine_runs={}", report.subroutine_runs);
            println!("wall_time_us={}", report.wall_time.as_micros());
            println!("seed={}", report.seed);
            if report.found_shift == Some(s) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_SOLVER)
            }
        }
        Err(e @ (Error::Config(_) | Error::Argument(_))) => input_error(e),
        Err(e) => {
            eprintln!("solver failure: {e}");
            ExitCode::from(EXIT_SOLVER)
        }
    }
}

fn cmd_spectrum(file: PathBuf, out: Option<PathBuf>) -> ExitCode {
    let sp = match from_file(&file).and_then(|t| wht(&t)) {
        Ok(sp) => sp,
        Err(e) => return input_error(e),
    };
    let csv = sp.to_csv();
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, csv) {
                return input_error(e);
            }
        }
        None => print!("{csv}"),
    }
    ExitCode::SUCCESS
}

fn cmd_sweep(config: PathBuf) -> ExitCode {
    let config = match ExperimentConfig::from_file(&config) {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    let report = match run_sweep(&config) {
        Ok(r) => r,
        Err(e) => return input_error(e),
    };
    let text = report.render(config.format);
    match &config.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return input_error(e);
            }
            for a in &report.aggregates {
                println!(
                    "n={} solver={} trials={} mean_queries={:.2} median_queries={} success_rate={:.4}",
                    a.n, a.solver, a.trials, a.mean_queries, a.median_queries, a.success_rate
                );
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}

fn cmd_verify() -> ExitCode {
    let summary = verify_corpus(&VerifyOptions::default());
    for check in &summary.checks {
        println!("{check}");
    }
    if summary.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INVARIANT)
    }
}

fn cmd_fit(report: PathBuf) -> ExitCode {
    let text = match std::fs::read_to_string(&report) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    let fits = match SweepReport::from_csv(&text).and_then(|r| fit_scaling(&r.rows)) {
        Ok(f) => f,
        Err(e) => return input_error(e),
    };
    for fit in fits {
        let what = match fit.kind {
            FitKind::Log2Median => "log2(median queries)",
            FitKind::Median => "median queries",
        };
        println!(
            "solver={} fit={} slope={:.4} ci95=[{:.4}, {:.4}] intercept={:.4} rms_residual={:.4}",
            fit.solver, what, fit.slope, fit.ci_low, fit.ci_high, fit.intercept, fit.rms_residual
        );
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve {
            family,
            file,
            n,
            shift,
            mode,
            delta,
            epsilon,
            seed,
            max_queries,
        } => cmd_solve(
            family,
            file,
            n,
            shift,
            mode,
            delta,
            epsilon,
            seed,
            max_queries,
        ),
        Command::Spectrum { file, out } => cmd_spectrum(file, out),
        Command::Sweep { config } => cmd_sweep(config),
        Command::Verify => cmd_verify(),
        Command::Fit { report } => cmd_fit(report),
    }
}
