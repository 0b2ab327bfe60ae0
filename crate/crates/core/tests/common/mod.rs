//! Reference computations kept independent of the library's solver path.
#![allow(dead_code)]

use std::collections::HashMap;

/// Expected samples until the span is full when the probability of leaving
/// a rank-`d` span depends only on `d`: `sum_d 1 / p_leave(d)`.
pub fn absorption_time_by_rank(n: usize, p_leave: impl Fn(usize) -> f64) -> f64 {
    (0..n).map(|d| 1.0 / p_leave(d)).sum()
}

/// Flat distribution over `Z_2^n` (bent functions): `p_leave(d) = 1 - 2^(d-n)`.
pub fn flat_absorption_time(n: usize) -> f64 {
    absorption_time_by_rank(n, |d| 1.0 - (d as f64 - n as f64).exp2())
}

/// Delta function: `P(0) = (1 - 2^(1-n))^2`, every other `u` has `2^(2-2n)`.
pub fn delta_leave_probability(n: usize, d: usize) -> f64 {
    let size = (n as f64).exp2();
    (size - (d as f64).exp2()) * (2.0 - 2.0 * n as f64).exp2()
}

pub fn delta_absorption_time(n: usize) -> f64 {
    absorption_time_by_rank(n, |d| delta_leave_probability(n, d))
}

/// Exact expected absorption time of the span chain for an arbitrary
/// distribution over `Z_2^n` (small `n`): subspaces are tracked as member
/// bitsets and `E(V) = (1 + sum_{u not in V} P(u) E(V + u)) / (1 - P(V))`.
pub fn absorption_time_exact(n: usize, probs: &[f64]) -> f64 {
    assert!(n <= 5, "subspace enumeration is for tiny n");
    fn expand(members: u64, u: usize) -> u64 {
        let mut out = members;
        for x in 0..64 {
            if members >> x & 1 == 1 {
                out |= 1 << (x ^ u);
            }
        }
        out
    }
    fn solve(n: usize, members: u64, probs: &[f64], memo: &mut HashMap<u64, f64>) -> f64 {
        let size = 1usize << n;
        let full = if size == 64 {
            u64::MAX
        } else {
            (1u64 << size) - 1
        };
        if members == full {
            return 0.0;
        }
        if let Some(&v) = memo.get(&members) {
            return v;
        }
        let stay: f64 = (0..size)
            .filter(|&u| members >> u & 1 == 1)
            .map(|u| probs[u])
            .sum();
        let onward: f64 = (0..size)
            .filter(|&u| members >> u & 1 == 0 && probs[u] > 0.0)
            .map(|u| probs[u] * solve(n, expand(members, u), probs, memo))
            .sum();
        let value = (1.0 + onward) / (1.0 - stay);
        memo.insert(members, value);
        value
    }
    solve(n, 1, probs, &mut HashMap::new())
}

/// Grover rotations of exact amplitude amplification at good probability `p`.
pub fn rotations(p: f64) -> u64 {
    let theta = p.sqrt().asin();
    (std::f64::consts::PI / (4.0 * theta) - 0.5 - 1e-9)
        .ceil()
        .max(0.0) as u64
}

/// Subroutine runs of the amplified solver on a delta function.
pub fn delta_amplified_runs(n: usize) -> u64 {
    (0..n)
        .map(|d| 2 * rotations(delta_leave_probability(n, d)) + 1)
        .sum()
}

/// Small xorshift generator for test-side Monte Carlo.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn unit(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Monte Carlo: mean number of uniform draws over `Z_2^n` until they span
/// the space, tracking the span as an explicit member set.
pub fn flat_absorption_monte_carlo(n: usize, trials: usize, seed: u64) -> f64 {
    let mut rng = XorShift(seed | 1);
    let size = 1usize << n;
    let mut total = 0usize;
    for _ in 0..trials {
        let mut span = vec![false; size];
        span[0] = true;
        let mut members = 1;
        let mut draws = 0;
        while members < size {
            draws += 1;
            let u = (rng.next() as usize) & (size - 1);
            if !span[u] {
                let current: Vec<usize> = (0..size).filter(|&x| span[x]).collect();
                for x in current {
                    span[x ^ u] = true;
                }
                members *= 2;
            }
        }
        total += draws;
    }
    total as f64 / trials as f64
}
