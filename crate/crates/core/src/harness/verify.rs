//! The invariant suite run by `verify`.

use std::fmt;

use serde::Serialize;

use crate::boolfn::{
    fwht_in_place, influence_of, influence_profile, influence_spectral, make_bent, make_delta,
    make_random, wht, wht_exact, BhspInstance, Spectrum, TruthTable,
};
use crate::error::Result;
use crate::qsim::{evolve, outcome_distribution, CircuitState};

use super::seed::trial_seed;

/// The spectral transform under test; swappable so a corrupted transform can
/// serve as a negative control.
pub type Transform = fn(&TruthTable) -> Result<Spectrum>;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Random functions checked per `n` in `4..=10`.
    pub sampled_per_n: usize,
    pub seed: u64,
    pub transform: Transform,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            sampled_per_n: 20,
            seed: 1,
            transform: wht,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: u64,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} cases={:<8} max_dev={:.3e} tol={:.0e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.max_deviation,
            self.tolerance
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifySummary {
    pub checks: Vec<CheckResult>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Check {
    name: &'static str,
    tolerance: f64,
    cases: u64,
    max_deviation: f64,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            cases: 0,
            max_deviation: 0.0,
        }
    }

    fn record(&mut self, deviation: f64) {
        self.cases += 1;
        // NaN counts as an unbounded deviation
        let d = if deviation.is_nan() {
            f64::INFINITY
        } else {
            deviation.abs()
        };
        self.max_deviation = self.max_deviation.max(d);
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            cases: self.cases,
            passed: self.max_deviation <= self.tolerance,
            max_deviation: self.max_deviation,
            tolerance: self.tolerance,
        }
    }
}

/// Every function on 1, 2 and 3 bits plus `sampled_per_n` random functions
/// for each `n` in `4..=10`.
pub fn corpus(sampled_per_n: usize, seed: u64) -> Vec<TruthTable> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        let size = 1u64 << n;
        for code in 0..1u64 << size {
            out.push(TruthTable::from_fn(n, |x| code >> x & 1 == 1).expect("small n"));
        }
    }
    for n in 4..=10usize {
        for k in 0..sampled_per_n as u64 {
            out.push(make_random(n, trial_seed(seed, n, k, "corpus")).expect("valid n"));
        }
    }
    out
}

fn shifts_for(n: usize, all_up_to: usize) -> Vec<u64> {
    let size = 1u64 << n;
    if n <= all_up_to {
        (0..size).collect()
    } else {
        vec![0, 1, size - 1, size / 3]
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn verify_corpus(options: &VerifyOptions) -> VerifySummary {
    let transform = options.transform;
    let mut parseval = Check::new("parseval", 1e-9);
    let mut lattice = Check::new("spectrum_lattice", 1e-12);
    let mut exact = Check::new("integer_reference", 1e-12);
    let mut involution = Check::new("wht_involution", 0.0);
    let mut lemma = Check::new("influence_equivalence", 1e-9);
    let mut profile = Check::new("fast_influence_profile", 1e-12);
    let mut covariance = Check::new("shift_covariance", 1e-12);
    let mut closed_form = Check::new("circuit_closed_form", 1e-12);
    let mut unitarity = Check::new("unitarity", 1e-9);
    let mut orthogonality = Check::new("orthogonality_law", 0.0);
    let mut independence = Check::new("g_independence", 1e-12);
    let mut accounting = Check::new("query_accounting", 0.0);
    let mut bent = Check::new("bent_flatness", 1e-12);
    let mut delta = Check::new("delta_influence", 0.0);

    for f in corpus(options.sampled_per_n, options.seed) {
        let n = f.n();
        let size = f.len() as f64;
        let sp = match transform(&f) {
            Ok(sp) => sp,
            Err(_) => {
                parseval.record(f64::INFINITY);
                continue;
            }
        };
        parseval.record(sp.parseval_sum() - 1.0);
        lattice.record(sp.lattice_deviation());
        let reference: Vec<f64> = wht_exact(&f).iter().map(|&w| w as f64 / size).collect();
        exact.record(max_abs_diff(sp.coeffs(), &reference));

        let signs: Vec<f64> = f.signs().iter().map(|&s| s as f64).collect();
        let mut twice = signs.clone();
        fwht_in_place(&mut twice);
        fwht_in_place(&mut twice);
        twice.iter_mut().for_each(|v| *v /= size);
        involution.record(max_abs_diff(&twice, &signs));

        let fast = influence_profile(&f);
        for v in 0..f.len() as u64 {
            let direct = influence_of(&f, v);
            lemma.record(direct - influence_spectral(&sp, v));
            profile.record(direct - fast.gamma()[v as usize]);
        }

        let mut marginal0: Option<Vec<f64>> = None;
        for s in shifts_for(n, 8) {
            let inst = BhspInstance::new_unchecked(f.clone(), s).expect("shift in range");
            if let Ok(shifted) = transform(&f.shifted(s)) {
                let abs = |c: &[f64]| c.iter().map(|x| x.abs()).collect::<Vec<_>>();
                covariance.record(max_abs_diff(&abs(shifted.coeffs()), &abs(sp.coeffs())));
            }
            let before = inst.counts();
            let state = evolve(&inst);
            let used = inst.counts().since(before);
            accounting.record(used.f.abs_diff(1) as f64 + used.g.abs_diff(1) as f64);
            closed_form.record(state.max_deviation(&CircuitState::closed_form(&sp, s)));
            unitarity.record(state.norm_squared() - 1.0);
            let violating = (0..f.len() as u64)
                .map(|u| state.amplitude(!crate::boolfn::inner(u, s), u).abs())
                .fold(0.0, f64::max);
            orthogonality.record(violating);
            let marginal = outcome_distribution(&state).marginal();
            match &marginal0 {
                None => marginal0 = Some(marginal),
                Some(m0) => independence.record(max_abs_diff(m0, &marginal)),
            }
        }
    }

    for n in (2..=10).step_by(2) {
        for variant in 0..4 {
            let f = make_bent(n, variant).expect("even n");
            let flat = (-(n as f64) / 2.0).exp2();
            match transform(&f) {
                Ok(sp) => bent.record(
                    sp.coeffs()
                        .iter()
                        .map(|c| (c.abs() - flat).abs())
                        .fold(0.0, f64::max),
                ),
                Err(_) => bent.record(f64::INFINITY),
            }
            bent.record(influence_profile(&f).gamma_min() - 0.5);
        }
    }
    for n in 1..=10usize {
        let f = make_delta(n, (n as u64 * 5) % (1 << n)).expect("valid point");
        let expected = (1.0 - n as f64).exp2();
        let p = influence_profile(&f);
        for &g in &p.gamma()[1..] {
            delta.record(g - expected);
        }
    }

    VerifySummary {
        checks: [
            parseval,
            lattice,
            exact,
            involution,
            lemma,
            profile,
            covariance,
            bent,
            delta,
            closed_form,
            unitarity,
            orthogonality,
            independence,
            accounting,
        ]
        .into_iter()
        .map(Check::finish)
        .collect(),
    }
}
