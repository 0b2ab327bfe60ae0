//! Generators for the test families: bent, delta and uniformly random functions.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::truth_table::{check_n, inner, TruthTable};
use crate::error::{Error, Result};

/// Maiorana-McFarland bent function `f(x, y) = <x, π(y)> ^ h(y)`.
///
/// The input splits into `x` (low `n/2` bits) and `y` (high `n/2` bits).
/// Variant 0 uses the identity permutation and `h = 0`, i.e. the inner
/// product `<x, y>`; any other variant seeds a random permutation `π` and a
/// random `h`.
pub fn make_bent(n: usize, variant: u64) -> Result<TruthTable> {
    check_n(n)?;
    if !n.is_multiple_of(2) {
        return Err(Error::Argument(format!(
            "bent functions need even n, got {n}"
        )));
    }
    let half = n / 2;
    let side = 1usize << half;
    let (perm, h): (Vec<u64>, Vec<bool>) = if variant == 0 {
        ((0..side as u64).collect(), vec![false; side])
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(variant);
        let mut perm: Vec<u64> = (0..side as u64).collect();
        perm.shuffle(&mut rng);
        let h = (0..side).map(|_| rng.gen()).collect();
        (perm, h)
    };
    let low_mask = (side - 1) as u64;
    TruthTable::from_fn(n, |z| {
        let (x, y) = (z & low_mask, (z >> half) as usize);
        inner(x, perm[y]) ^ h[y]
    })
}

/// The function marking exactly `x0`.
pub fn make_delta(n: usize, x0: u64) -> Result<TruthTable> {
    check_n(n)?;
    if x0 >> n != 0 {
        return Err(Error::Argument(format!(
            "point {x0:#x} out of range for n={n}"
        )));
    }
    let mut t = TruthTable::zeros(n)?;
    t.set(x0, true);
    Ok(t)
}

/// A uniformly random function drawn from a ChaCha8 stream seeded with `seed`.
pub fn make_random(n: usize, seed: u64) -> Result<TruthTable> {
    check_n(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = (0..(1usize << n).div_ceil(64))
        .map(|_| rng.next_u64())
        .collect();
    TruthTable::from_words(n, words)
}
