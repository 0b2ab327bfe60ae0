//! Cross-checks of the reference oracles, and the solver against them.

mod common;

use common::*;
use hidden_shift::boolfn::{make_bent, make_delta, make_random, well_posed, wht, BhspInstance};
use hidden_shift::solver::{solve_quantum, Mode, SolveConfig};

#[test]
fn frozen_absorption_values() {
    // exact sums, frozen
    assert!((flat_absorption_time(8) - 9.602_783_807_621_77).abs() < 1e-9);
    assert!((flat_absorption_time(10) - 11.605_718_271_890_746).abs() < 1e-9);
    assert!((delta_absorption_time(8) - 614.578_163_687_793_3).abs() < 1e-6);
    assert!((delta_absorption_time(10) - 2_971.063_877_604_031).abs() < 1e-6);
    assert_eq!(delta_amplified_runs(8), 114);
    assert_eq!(delta_amplified_runs(10), 284);
    assert_eq!(delta_amplified_runs(12), 650);
}

#[test]
fn rank_formula_agrees_with_subspace_chain() {
    for n in 1..=4 {
        let size = 1usize << n;
        let flat = vec![1.0 / size as f64; size];
        assert!((absorption_time_exact(n, &flat) - flat_absorption_time(n)).abs() < 1e-9);

        let sp = wht(&make_delta(n, 0).unwrap()).unwrap();
        let exact = absorption_time_exact(n, &sp.squared());
        assert!((exact - delta_absorption_time(n)).abs() < 1e-9 * exact);
    }
}

#[test]
fn monte_carlo_agrees_with_flat_formula() {
    let mc = flat_absorption_monte_carlo(8, 20_000, 17);
    assert!((mc - flat_absorption_time(8)).abs() < 0.1, "mc={mc}");
}

fn mean_plain_runs(inst: &BhspInstance, trials: u64) -> f64 {
    (0..trials)
        .map(|seed| {
            let r = solve_quantum(inst, &SolveConfig::new(Mode::Plain, seed)).unwrap();
            r.subroutine_runs as f64
        })
        .sum::<f64>()
        / trials as f64
}

#[test]
fn solver_matches_exact_chain_on_asymmetric_functions() {
    for seed in 0..5 {
        let f = (0..)
            .map(|k| make_random(4, seed * 100 + k).unwrap())
            .find(well_posed)
            .unwrap();
        let expected = absorption_time_exact(4, &wht(&f).unwrap().squared());
        let inst = BhspInstance::new(f, 9).unwrap();
        let mean = mean_plain_runs(&inst, 20_000);
        assert!(
            (mean - expected).abs() < 0.03 * expected,
            "mean={mean} expected={expected}"
        );
    }
}

#[test]
fn delta_plain_mean_near_chain_prediction() {
    let inst = BhspInstance::new(make_delta(8, 0).unwrap(), 0x3c).unwrap();
    let mean = mean_plain_runs(&inst, 300);
    let expected = delta_absorption_time(8);
    assert!(
        (mean - expected).abs() < 0.25 * expected,
        "mean={mean} expected={expected}"
    );
}

#[test]
fn bent_plain_mean_near_flat_prediction() {
    let inst = BhspInstance::new(make_bent(8, 3).unwrap(), 0x81).unwrap();
    let mean = mean_plain_runs(&inst, 1000);
    assert!((9.0..=10.2).contains(&mean), "mean={mean}");
}

#[test]
fn amplified_delta_cost_is_deterministic() {
    for n in [6, 8, 10] {
        let inst = BhspInstance::new(make_delta(n, 1).unwrap(), 2).unwrap();
        let r = solve_quantum(&inst, &SolveConfig::new(Mode::Amplified, n as u64)).unwrap();
        assert_eq!(r.subroutine_runs, delta_amplified_runs(n));
    }
}
