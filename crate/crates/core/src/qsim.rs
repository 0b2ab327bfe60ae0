//! State-vector simulation of the sampling circuit
//! `H^n -> O_f -> Z(ancilla) -> O_g -> H^n` followed by a joint measurement
//! of the ancilla and the register.
//!
//! Amplitudes are real. Basis state `|b>|u>` lives at index `(u << 1) | b`,
//! so the ancilla is bit 0 of the packed index.

use std::f64::consts::PI;

use rand::Rng;

use crate::boolfn::{inner, wht, BhspInstance, Spectrum};
use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;

#[inline]
fn packed(b: bool, u: u64) -> usize {
    ((u << 1) | b as u64) as usize
}

/// Register state after the sampling circuit, before measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitState {
    n: usize,
    amps: Vec<f64>,
}

/// Working register with deferred normalization.
///
/// Hadamards are applied as unnormalized butterflies and the factor
/// `2^(-halvings/2)` is applied once at readout, which keeps every stored
/// amplitude of the sampling circuit an exact small integer.
struct Register {
    n: usize,
    raw: Vec<f64>,
    halvings: u32,
}

impl Register {
    fn zero(n: usize) -> Self {
        let mut raw = vec![0.0; 1 << (n + 1)];
        raw[0] = 1.0;
        Self {
            n,
            raw,
            halvings: 0,
        }
    }

    /// Hadamard on register qubit `j` (packed bit `j + 1`).
    fn hadamard(&mut self, j: usize) {
        let stride = 1usize << (j + 1);
        for block in self.raw.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        self.halvings += 1;
    }

    fn hadamard_all(&mut self) {
        for j in 0..self.n {
            self.hadamard(j);
        }
    }

    /// `|b>|x> -> |b ^ h(x)>|x>`.
    fn oracle(&mut self, h: &crate::boolfn::TruthTable) {
        for (x, pair) in self.raw.chunks_exact_mut(2).enumerate() {
            if h.get(x as u64) {
                pair.swap(0, 1);
            }
        }
    }

    /// `Z` on the ancilla.
    fn phase_ancilla(&mut self) {
        self.raw
            .iter_mut()
            .skip(1)
            .step_by(2)
            .for_each(|a| *a = -*a);
    }

    fn into_state(self) -> CircuitState {
        let scale = (-(self.halvings as f64) / 2.0).exp2();
        // `+ 0.0` folds the -0.0 left by the phase gate into +0.0
        let amps = self.raw.into_iter().map(|a| a * scale + 0.0).collect();
        CircuitState { n: self.n, amps }
    }
}

pub(crate) fn evolve_uncounted(instance: &BhspInstance) -> CircuitState {
    let mut reg = Register::zero(instance.n());
    reg.hadamard_all();
    reg.oracle(instance.function());
    reg.phase_ancilla();
    reg.oracle(instance.g_table());
    reg.hadamard_all();
    reg.into_state()
}

/// Runs the sampling circuit gate by gate, charging one query to each oracle.
pub fn evolve(instance: &BhspInstance) -> CircuitState {
    instance.charge(1, 1);
    evolve_uncounted(instance)
}

impl CircuitState {
    /// The analytic post-circuit state
    /// `|0> sum_u (1 + χ_u(s))/2 F̂(u) |u> + |1> sum_u (1 - χ_u(s))/2 F̂(u) |u>`.
    pub fn closed_form(spectrum: &Spectrum, shift: u64) -> Self {
        let n = spectrum.n();
        let mut amps = vec![0.0; 1 << (n + 1)];
        for (u, &c) in spectrum.coeffs().iter().enumerate() {
            amps[packed(inner(u as u64, shift), u as u64)] = c;
        }
        Self { n, amps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitude(&self, b: bool, u: u64) -> f64 {
        self.amps[packed(b, u)]
    }

    /// Amplitudes in packed `(u << 1) | b` order.
    pub fn amplitudes(&self) -> &[f64] {
        &self.amps
    }

    pub fn norm_squared(&self) -> f64 {
        self.amps.iter().map(|a| a * a).sum()
    }

    pub fn max_deviation(&self, other: &CircuitState) -> f64 {
        assert_eq!(self.n, other.n);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// CSV dump with rows `b,u,amplitude` (debugging aid, `n <= 10`).
    pub fn to_csv(&self) -> Result<String> {
        if self.n > 10 {
            return Err(Error::Capacity(format!(
                "state dump limited to n <= 10, got {}",
                self.n
            )));
        }
        let mut out = String::from("b,u,amplitude\n");
        for b in [false, true] {
            for u in 0..1u64 << self.n {
                let amp = self.amplitude(b, u);
                out.push_str(&format!("{},{:0w$b},{}\n", b as u8, u, amp, w = self.n));
            }
        }
        Ok(out)
    }
}

/// One measurement result `(b, u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOutcome {
    pub b: bool,
    pub u: Gf2Vector,
}

/// Exact measurement probabilities over packed `(u << 1) | b` indices.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution {
    n: usize,
    probs: Vec<f64>,
}

pub fn outcome_distribution(state: &CircuitState) -> OutcomeDistribution {
    OutcomeDistribution {
        n: state.n,
        probs: state.amps.iter().map(|a| a * a).collect(),
    }
}

impl OutcomeDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prob(&self, b: bool, u: u64) -> f64 {
        self.probs[packed(b, u)]
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    /// `P(u)` summed over the ancilla.
    pub fn marginal(&self) -> Vec<f64> {
        self.probs.chunks_exact(2).map(|p| p[0] + p[1]).collect()
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// Measures `state` once by inverse CDF over the packed index.
pub fn sample<R: Rng + ?Sized>(state: &CircuitState, rng: &mut R) -> SampleOutcome {
    OutcomeTable::from_distribution(&outcome_distribution(state)).draw(rng)
}

/// How a table index decodes to an outcome.
#[derive(Clone, Copy, Debug)]
enum Layout {
    /// Packed `(u << 1) | b` from a simulated state.
    Packed,
    /// Index is `u`; the ancilla is `<u, s>`.
    Marginal { shift: u64 },
}

/// Cumulative outcome table for repeated inverse-CDF draws.
#[derive(Clone, Debug)]
struct OutcomeTable {
    n: usize,
    layout: Layout,
    probs: Vec<f64>,
    cumulative: Vec<f64>,
}

impl OutcomeTable {
    fn new(n: usize, layout: Layout, probs: Vec<f64>) -> Self {
        let cumulative = probs
            .iter()
            .scan(0.0, |acc, p| {
                *acc += p;
                Some(*acc)
            })
            .collect();
        Self {
            n,
            layout,
            probs,
            cumulative,
        }
    }

    fn from_distribution(dist: &OutcomeDistribution) -> Self {
        Self::new(dist.n, Layout::Packed, dist.probs.clone())
    }

    fn decode(&self, index: usize) -> SampleOutcome {
        let (b, u) = match self.layout {
            Layout::Packed => (index & 1 == 1, (index >> 1) as u64),
            Layout::Marginal { shift } => (inner(index as u64, shift), index as u64),
        };
        SampleOutcome {
            b,
            u: Gf2Vector::new(self.n, u).expect("index within register"),
        }
    }

    fn u_of(&self, index: usize) -> u64 {
        match self.layout {
            Layout::Packed => (index >> 1) as u64,
            Layout::Marginal { .. } => index as u64,
        }
    }

    fn last_supported(&self) -> usize {
        self.probs
            .iter()
            .rposition(|&p| p > 0.0)
            .expect("distribution has support")
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> SampleOutcome {
        let total = *self.cumulative.last().expect("nonempty table");
        let r = rng.gen::<f64>() * total;
        let index = self.cumulative.partition_point(|&c| c <= r);
        let index = if index >= self.probs.len() {
            self.last_supported()
        } else {
            index
        };
        self.decode(index)
    }

    fn good_mass(&self, good: &impl Fn(u64) -> bool) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|&(i, &p)| p > 0.0 && good(self.u_of(i)))
            .map(|(_, p)| p)
            .sum()
    }

    /// Draws from the distribution restricted to outcomes with `good(u)`.
    fn draw_restricted<R: Rng + ?Sized>(
        &self,
        good: &impl Fn(u64) -> bool,
        mass: f64,
        rng: &mut R,
    ) -> SampleOutcome {
        let r = rng.gen::<f64>() * mass;
        let mut acc = 0.0;
        let mut last = None;
        for (i, &p) in self.probs.iter().enumerate() {
            if p > 0.0 && good(self.u_of(i)) {
                acc += p;
                last = Some(i);
                if acc > r {
                    return self.decode(i);
                }
            }
        }
        self.decode(last.expect("positive good mass"))
    }
}

/// Grover rotations needed by exact amplitude amplification of a good
/// outcome with probability `p`: `ceil(π / (4 asin √p) - 1/2)`.
pub fn amplification_rounds(p: f64) -> Result<u64> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::ImpossibleAmplification);
    }
    let theta = p.min(1.0).sqrt().asin();
    let k = (PI / (4.0 * theta) - 0.5 - 1e-9).ceil();
    Ok(k.max(0.0) as u64)
}

/// Which simulation path produces the outcome law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    /// Gate-by-gate evolution of the `n + 1` qubit register.
    Circuit,
    /// Draw `u` from `F̂(u)^2` and set `b = <u, s>`; scales to large `n`.
    #[default]
    Direct,
}

/// Outcome of an amplified run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmplifiedSample {
    pub outcome: SampleOutcome,
    /// Rotation count `k`.
    pub rounds: u64,
    /// Subroutine applications, `2k + 1`.
    pub runs: u64,
    /// Oracle calls, `2 (2k + 1)`.
    pub query_cost: u64,
}

/// The sampling circuit bound to one instance.
///
/// The post-circuit state is the same on every run, so it is prepared once;
/// each call to [`run`](Self::run) charges the instance one query per oracle.
pub struct SamplingSubroutine<'a> {
    instance: &'a BhspInstance,
    table: OutcomeTable,
}

impl<'a> SamplingSubroutine<'a> {
    pub fn new(instance: &'a BhspInstance, backend: Backend) -> Result<Self> {
        let table = match backend {
            Backend::Circuit => {
                OutcomeTable::from_distribution(&outcome_distribution(&evolve_uncounted(instance)))
            }
            Backend::Direct => {
                let sp = wht(instance.function())?;
                OutcomeTable::new(
                    instance.n(),
                    Layout::Marginal {
                        shift: instance.secret_shift(),
                    },
                    sp.squared(),
                )
            }
        };
        Ok(Self { instance, table })
    }

    pub fn n(&self) -> usize {
        self.table.n
    }

    /// One circuit run and measurement.
    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> SampleOutcome {
        self.instance.charge(1, 1);
        self.table.draw(rng)
    }

    /// Probability that a plain run yields `u` with `good(u)`.
    pub fn good_probability(&self, good: impl Fn(u64) -> bool) -> f64 {
        self.table.good_mass(&good)
    }

    /// Amplitude-amplified run returning an outcome with `good(u)`.
    ///
    /// Modeled with the exact good-outcome probability `p`: the rotation
    /// count is [`amplification_rounds`], the cost is `2k + 1` subroutine
    /// applications, and the result follows the original law restricted to
    /// good outcomes.
    pub fn run_amplified<R: Rng + ?Sized>(
        &self,
        good: impl Fn(u64) -> bool,
        rng: &mut R,
    ) -> Result<AmplifiedSample> {
        let mass = self.table.good_mass(&good);
        let rounds = amplification_rounds(mass)?;
        let runs = 2 * rounds + 1;
        self.instance.charge(runs, runs);
        let outcome = self.table.draw_restricted(&good, mass, rng);
        Ok(AmplifiedSample {
            outcome,
            rounds,
            runs,
            query_cost: 2 * runs,
        })
    }
}
