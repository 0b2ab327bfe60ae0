use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Mode, RunReport, SolveConfig};
use crate::boolfn::BhspInstance;
use crate::error::{Error, Result};
use crate::gf2::{Gf2Basis, InsertOutcome};
use crate::qsim::{amplification_rounds, SamplingSubroutine};

/// Subroutine-run cutoff of the promise solver, `ceil(C n ln(1/ε) / √δ)`.
pub fn promise_cutoff(n: usize, config: &SolveConfig) -> Result<u64> {
    config.validate()?;
    let raw = config.cutoff_constant * n as f64 * (1.0 / config.epsilon).ln() / config.delta.sqrt();
    if !(raw.is_finite() && raw >= 1.0) {
        return Err(Error::Config(format!(
            "promise cutoff {raw} rounds to zero runs"
        )));
    }
    Ok(raw.ceil() as u64)
}

/// Samples until the measured `u` span `Z_2^n`, then solves `<u_i, s> = b_i`.
///
/// `Plain` measures the circuit directly and discards samples already in
/// the span. `Amplified` amplifies the outcomes outside the current span.
/// `Promise` delegates to [`solve_promise`].
pub fn solve_quantum(instance: &BhspInstance, config: &SolveConfig) -> Result<RunReport> {
    config.validate()?;
    match config.mode {
        Mode::Plain => sampling_loop(instance, config, false, None),
        Mode::Amplified => sampling_loop(instance, config, true, None),
        Mode::Promise => solve_promise(instance, config),
    }
}

/// Amplified solver stopped after the promise cutoff; `found_shift` is
/// `None` when the cutoff is reached first.
pub fn solve_promise(instance: &BhspInstance, config: &SolveConfig) -> Result<RunReport> {
    let cutoff = promise_cutoff(instance.n(), config)?;
    sampling_loop(instance, config, true, Some(cutoff))
}

fn sampling_loop(
    instance: &BhspInstance,
    config: &SolveConfig,
    amplified: bool,
    cutoff: Option<u64>,
) -> Result<RunReport> {
    let started = Instant::now();
    let start_counts = instance.counts();
    let n = instance.n();
    let subroutine = SamplingSubroutine::new(instance, config.backend)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut basis = Gf2Basis::new(n);
    let mut trials_per_rank_step = Vec::with_capacity(n);
    let mut runs = 0u64;
    let mut step_runs = 0u64;

    while basis.rank() < n {
        let outcome = if amplified {
            let good = |u: u64| !basis.in_span(u);
            let cost = 2 * amplification_rounds(subroutine.good_probability(good))? + 1;
            if cutoff.is_some_and(|c| runs + cost > c) {
                break;
            }
            let sample = subroutine.run_amplified(good, &mut rng)?;
            runs += sample.runs;
            step_runs += sample.runs;
            sample.outcome
        } else {
            if cutoff.is_some_and(|c| runs + 1 > c) {
                break;
            }
            runs += 1;
            step_runs += 1;
            subroutine.run(&mut rng)
        };
        match basis.insert(outcome.u, outcome.b)? {
            InsertOutcome::Extended => {
                trials_per_rank_step.push(step_runs);
                step_runs = 0;
            }
            InsertOutcome::Redundant => {}
            InsertOutcome::Inconsistent => return Err(Error::PromiseViolation),
        }
        if instance.counts().since(start_counts).total() > config.max_queries {
            return Err(Error::Budget {
                budget: config.max_queries,
                rank: basis.rank(),
            });
        }
    }

    let found_shift = if basis.rank() == n {
        Some(basis.solve()?.bits())
    } else {
        None
    };
    let used = instance.counts().since(start_counts);
    Ok(RunReport {
        found_shift,
        f_queries: used.f,
        g_queries: used.g,
        subroutine_runs: runs,
        trials_per_rank_step,
        wall_time: started.elapsed(),
        seed: config.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{make_bent, make_delta, make_random, well_posed, TruthTable};
    use crate::qsim::Backend;

    fn random_instance(n: usize, seed: u64) -> BhspInstance {
        let f = (0..)
            .map(|k| make_random(n, seed.wrapping_mul(1000).wrapping_add(k)).unwrap())
            .find(well_posed)
            .unwrap();
        let s = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) >> (64 - n);
        BhspInstance::new(f, s).unwrap()
    }

    #[test]
    fn one_bit_parity_solves_in_one_run() {
        let inst = BhspInstance::new(TruthTable::from_fn(1, |x| x == 1).unwrap(), 1).unwrap();
        let report = solve_quantum(&inst, &SolveConfig::new(Mode::Plain, 3)).unwrap();
        assert_eq!(report.found_shift, Some(1));
        assert_eq!(report.subroutine_runs, 1);
        assert_eq!((report.f_queries, report.g_queries), (1, 1));
        assert_eq!(report.trials_per_rank_step, vec![1]);
    }

    #[test]
    fn plain_mode_recovers_shift_and_balances_ledger() {
        for n in 1..=10 {
            for seed in 0..20 {
                let inst = random_instance(n, seed);
                let report = solve_quantum(&inst, &SolveConfig::new(Mode::Plain, seed)).unwrap();
                assert_eq!(report.found_shift, Some(inst.secret_shift()));
                assert_eq!(report.f_queries, report.subroutine_runs);
                assert_eq!(report.g_queries, report.subroutine_runs);
                assert_eq!(report.trials_per_rank_step.len(), n);
                assert!(report.trials_per_rank_step.iter().all(|&t| t >= 1));
                assert_eq!(
                    report.trials_per_rank_step.iter().sum::<u64>(),
                    report.subroutine_runs
                );
            }
        }
    }

    #[test]
    fn circuit_backend_solves_too() {
        let inst = BhspInstance::new(make_bent(6, 2).unwrap(), 0b101101).unwrap();
        let config = SolveConfig {
            backend: Backend::Circuit,
            ..SolveConfig::new(Mode::Plain, 8)
        };
        assert_eq!(
            solve_quantum(&inst, &config).unwrap().found_shift,
            Some(0b101101)
        );
    }

    #[test]
    fn amplified_mode_extends_rank_every_step() {
        let inst = BhspInstance::new(make_delta(8, 17).unwrap(), 0xa7).unwrap();
        let report = solve_quantum(&inst, &SolveConfig::new(Mode::Amplified, 1)).unwrap();
        assert_eq!(report.found_shift, Some(0xa7));
        assert_eq!(report.trials_per_rank_step.len(), 8);
        assert!(report.trials_per_rank_step.iter().all(|t| t % 2 == 1));
        assert_eq!(report.queries(), 2 * report.subroutine_runs);
    }

    #[test]
    fn budget_exhaustion_reports_partial_rank() {
        let inst = BhspInstance::new(make_delta(10, 0).unwrap(), 5).unwrap();
        let config = SolveConfig {
            max_queries: 40,
            ..SolveConfig::new(Mode::Plain, 2)
        };
        assert!(matches!(
            solve_quantum(&inst, &config),
            Err(Error::Budget { budget: 40, rank }) if rank < 10
        ));
    }

    #[test]
    fn ill_posed_instance_cannot_be_amplified_to_full_rank() {
        let f = TruthTable::from_fn(3, |x| x & 3 == 3).unwrap();
        let inst = BhspInstance::new_unchecked(f, 1).unwrap();
        let config = SolveConfig::new(Mode::Amplified, 0);
        assert_eq!(
            solve_quantum(&inst, &config).unwrap_err(),
            Error::ImpossibleAmplification
        );
    }

    #[test]
    fn promise_cutoff_formula() {
        let config = SolveConfig {
            delta: 1.0 / 3.0,
            epsilon: 0.1,
            ..SolveConfig::default()
        };
        let expected = (4.0 * 12.0 * 10f64.ln() * 3f64.sqrt()).ceil() as u64;
        assert_eq!(promise_cutoff(12, &config).unwrap(), expected);

        let degenerate = SolveConfig {
            cutoff_constant: 0.0,
            ..config.clone()
        };
        assert!(matches!(
            promise_cutoff(12, &degenerate),
            Err(Error::Config(_))
        ));
        let bad_delta = SolveConfig {
            delta: 0.0,
            ..config.clone()
        };
        assert!(matches!(
            promise_cutoff(12, &bad_delta),
            Err(Error::Config(_))
        ));
        let bad_eps = SolveConfig {
            epsilon: 1.0,
            ..config
        };
        assert!(matches!(
            promise_cutoff(12, &bad_eps),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn promise_mode_gives_up_at_the_cutoff() {
        // delta function violates the promise badly: γ_f = 2^-9 at n = 10
        let inst = BhspInstance::new(make_delta(10, 3).unwrap(), 77).unwrap();
        let config = SolveConfig {
            delta: 1.0,
            epsilon: 0.5,
            ..SolveConfig::new(Mode::Promise, 4)
        };
        let cutoff = promise_cutoff(10, &config).unwrap();
        let report = solve_quantum(&inst, &config).unwrap();
        assert_eq!(report.found_shift, None);
        assert!(report.subroutine_runs <= cutoff);
    }

    #[test]
    fn promise_cutoff_never_binds_for_bent_functions() {
        for n in (2..=12).step_by(2) {
            let config = SolveConfig {
                delta: 1.0,
                epsilon: 0.1,
                cutoff_constant: 2.0,
                ..SolveConfig::new(Mode::Promise, n as u64)
            };
            for variant in 0..20 {
                let inst =
                    BhspInstance::new(make_bent(n, variant).unwrap(), variant % (1 << n)).unwrap();
                let report = solve_quantum(
                    &inst,
                    &SolveConfig {
                        seed: variant,
                        ..config.clone()
                    },
                )
                .unwrap();
                assert_eq!(report.found_shift, Some(variant % (1 << n)));
            }
        }
    }
}
