use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RunReport;
use crate::boolfn::BhspInstance;
use crate::error::{Error, Result};

/// Packed set of shift candidates.
struct CandidateSet {
    words: Vec<u64>,
    count: u64,
}

impl CandidateSet {
    fn full(n: usize) -> Self {
        let len = 1usize << n;
        let mut words = vec![u64::MAX; len.div_ceil(64)];
        if len < 64 {
            words[0] = (1u64 << len) - 1;
        }
        Self {
            words,
            count: len as u64,
        }
    }

    fn contains(&self, c: u64) -> bool {
        self.words[(c / 64) as usize] >> (c % 64) & 1 == 1
    }

    fn remove(&mut self, c: u64) {
        let word = &mut self.words[(c / 64) as usize];
        let mask = 1u64 << (c % 64);
        if *word & mask != 0 {
            *word &= !mask;
            self.count -= 1;
        }
    }

    fn first(&self) -> Option<u64> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|i| i as u64 * 64 + self.words[i].trailing_zeros() as u64)
    }
}

/// Classical baseline: query `(f(x), g(x))` at fresh uniformly random
/// points and discard every shift contradicted by a pair of queried points.
///
/// A candidate `c` is testable once both `x` and `x ^ c` are queried; it
/// survives iff `g(x) = f(x ^ c)` on every such pair. The solver stops when
/// one candidate is left. Each point costs two queries.
pub fn solve_classical(instance: &BhspInstance, seed: u64, max_queries: u64) -> Result<RunReport> {
    let started = Instant::now();
    let start_counts = instance.counts();
    let n = instance.n();
    let size = 1u64 << n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = CandidateSet::full(n);
    let mut visited = vec![0u64; (size as usize).div_ceil(64)];
    // (x, f(x), g(x))
    let mut points: Vec<(u64, bool, bool)> = Vec::new();

    while candidates.count > 1 && (points.len() as u64) < size {
        if instance.counts().since(start_counts).total() + 2 > max_queries {
            return Err(Error::Budget {
                budget: max_queries,
                rank: 0,
            });
        }
        let x = loop {
            let x = rng.gen_range(0..size);
            if visited[(x / 64) as usize] >> (x % 64) & 1 == 0 {
                visited[(x / 64) as usize] |= 1 << (x % 64);
                break x;
            }
        };
        let (fx, gx) = (instance.query_f(x), instance.query_g(x));
        points.push((x, fx, gx));
        for &(y, fy, gy) in &points {
            let c = x ^ y;
            // g(x) = f(x ^ c) = f(y) and g(y) = f(y ^ c) = f(x)
            if candidates.contains(c) && (gx != fy || gy != fx) {
                candidates.remove(c);
            }
        }
    }

    let found_shift = if candidates.count == 1 {
        candidates.first()
    } else {
        None
    };
    let used = instance.counts().since(start_counts);
    Ok(RunReport {
        found_shift,
        f_queries: used.f,
        g_queries: used.g,
        subroutine_runs: 0,
        trials_per_rank_step: Vec::new(),
        wall_time: started.elapsed(),
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{make_random, well_posed, TruthTable};

    fn instance(n: usize, seed: u64) -> BhspInstance {
        let f = (0..)
            .map(|k| make_random(n, seed * 7919 + k).unwrap())
            .find(well_posed)
            .unwrap();
        BhspInstance::new(f, seed % (1 << n)).unwrap()
    }

    #[test]
    fn small_instances_solve_within_full_information() {
        for n in 1..=4 {
            for seed in 0..200 {
                let inst = instance(n, seed);
                let report = solve_classical(&inst, seed, u64::MAX).unwrap();
                assert_eq!(report.found_shift, Some(inst.secret_shift()));
                assert!(report.queries() <= 2 << n);
                assert_eq!(report.f_queries, report.g_queries);
            }
        }
    }

    #[test]
    fn planted_shift_is_never_eliminated() {
        for seed in 0..50 {
            let inst = instance(10, seed);
            let report = solve_classical(&inst, seed, u64::MAX).unwrap();
            assert_eq!(report.found_shift, Some(inst.secret_shift()));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let inst = instance(12, 1);
        assert!(matches!(
            solve_classical(&inst, 0, 10),
            Err(Error::Budget { budget: 10, .. })
        ));
    }

    #[test]
    fn ill_posed_instance_exhausts_without_answer() {
        let f = TruthTable::from_fn(3, |x| x & 3 == 3).unwrap();
        let inst = BhspInstance::new_unchecked(f, 2).unwrap();
        let report = solve_classical(&inst, 0, u64::MAX).unwrap();
        assert_eq!(report.found_shift, None);
        assert_eq!(report.queries(), 16);
    }
}
