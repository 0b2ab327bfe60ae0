use super::spectrum::{fwht_in_place, wht_exact, Spectrum};
use super::truth_table::{inner, TruthTable};

/// Influence of a shift `v`: the fraction of inputs with `f(x) != f(x ^ v)`.
///
/// Computed combinatorially by comparing the table with its `v`-shift.
pub fn influence_of(t: &TruthTable, v: u64) -> f64 {
    assert!((v as usize) < t.len(), "shift {v:#x} out of range");
    t.disagreement_count(v) as f64 / t.len() as f64
}

/// Influence of `v` from the spectrum: `sum over <u,v> = 1 of F̂(u)^2`.
pub fn influence_spectral(sp: &Spectrum, v: u64) -> f64 {
    assert!(
        (v as usize) < sp.coeffs().len(),
        "shift {v:#x} out of range"
    );
    sp.coeffs()
        .iter()
        .enumerate()
        .filter(|&(u, _)| inner(u as u64, v))
        .map(|(_, c)| c * c)
        .sum()
}

/// Influences of every shift, with the minimum over nonzero shifts.
#[derive(Clone, Debug, PartialEq)]
pub struct InfluenceProfile {
    n: usize,
    disagreements: Vec<u64>,
    gamma: Vec<f64>,
    gamma_min: f64,
    argmin: u64,
}

/// All-shift influence profile in `O(n 2^n)`.
///
/// The autocorrelation `A(v) = sum_x F(x) F(x ^ v)` is recovered as the
/// transform of the squared integer spectrum divided by `2^n`, and the
/// disagreement count is `(2^n - A(v)) / 2`. All arithmetic is in `i64`
/// (the largest intermediate is `4^n`), so the profile is exact.
pub fn influence_profile(t: &TruthTable) -> InfluenceProfile {
    let n = t.n();
    let size = t.len() as i64;
    let mut power: Vec<i64> = wht_exact(t).into_iter().map(|w| w * w).collect();
    fwht_in_place(&mut power);
    let disagreements: Vec<u64> = power
        .into_iter()
        .map(|p| {
            debug_assert_eq!(p % size, 0);
            let auto = p / size;
            ((size - auto) / 2) as u64
        })
        .collect();
    InfluenceProfile::from_disagreements(n, disagreements)
}

impl InfluenceProfile {
    fn from_disagreements(n: usize, disagreements: Vec<u64>) -> Self {
        let scale = (-(n as f64)).exp2();
        let gamma: Vec<f64> = disagreements.iter().map(|&d| d as f64 * scale).collect();
        // lowest index wins ties
        let (argmin, gamma_min) =
            gamma
                .iter()
                .enumerate()
                .skip(1)
                .fold((0usize, f64::INFINITY), |best, (v, &g)| {
                    if g < best.1 {
                        (v, g)
                    } else {
                        best
                    }
                });
        Self {
            n,
            disagreements,
            gamma,
            gamma_min,
            argmin: argmin as u64,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    /// Exact disagreement counts `|{x : f(x) != f(x ^ v)}|`.
    pub fn disagreements(&self) -> &[u64] {
        &self.disagreements
    }

    /// Minimum influence over nonzero shifts.
    pub fn gamma_min(&self) -> f64 {
        self.gamma_min
    }

    pub fn argmin(&self) -> u64 {
        self.argmin
    }
}

/// True iff no nonzero shift leaves the function unchanged.
pub fn well_posed(t: &TruthTable) -> bool {
    self_shift(t).is_none()
}

/// The lowest nonzero `v` with `f(x) = f(x ^ v)` everywhere, if any.
pub fn self_shift(t: &TruthTable) -> Option<u64> {
    let profile = influence_profile(t);
    (profile.gamma_min == 0.0).then_some(profile.argmin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::wht;

    fn and2() -> TruthTable {
        TruthTable::from_fn(2, |x| x == 3).unwrap()
    }

    fn delta3() -> TruthTable {
        TruthTable::from_fn(3, |x| x == 0).unwrap()
    }

    #[test]
    fn combinatorial_examples() {
        assert_eq!(influence_of(&and2(), 0b11), 0.5);
        assert_eq!(influence_of(&and2(), 0), 0.0);
        assert_eq!(influence_of(&delta3(), 0b001), 0.25);
    }

    #[test]
    fn spectral_examples() {
        assert_eq!(influence_spectral(&wht(&and2()).unwrap(), 0b01), 0.5);
        assert_eq!(influence_spectral(&wht(&and2()).unwrap(), 0), 0.0);
        assert_eq!(influence_spectral(&wht(&delta3()).unwrap(), 0b001), 0.25);
    }

    #[test]
    fn profile_examples() {
        let p = influence_profile(&and2());
        assert_eq!(p.gamma(), &[0.0, 0.5, 0.5, 0.5]);
        assert_eq!((p.gamma_min(), p.argmin()), (0.5, 1));

        let p = influence_profile(&delta3());
        assert_eq!(p.gamma_min(), 0.25);
        assert!(p.gamma()[1..].iter().all(|&g| g == 0.25));

        let parity = TruthTable::from_fn(1, |x| x == 1).unwrap();
        let p = influence_profile(&parity);
        assert_eq!(p.gamma(), &[0.0, 1.0]);
        assert_eq!(p.gamma_min(), 1.0);
    }

    #[test]
    fn profile_matches_pointwise_influence() {
        let t = TruthTable::from_fn(10, |x| (x.wrapping_mul(0x2545_f491) >> 11) & 1 == 1).unwrap();
        let p = influence_profile(&t);
        for v in 0..t.len() as u64 {
            assert_eq!(p.gamma()[v as usize], influence_of(&t, v));
        }
    }

    #[test]
    fn argmin_breaks_ties_by_lowest_index() {
        // f(x) = x_0 x_1 on three bits: shift 0b100 is a self-shift, so is nothing lower.
        let t = TruthTable::from_fn(3, |x| x & 3 == 3).unwrap();
        assert_eq!(self_shift(&t), Some(0b100));
        let t = TruthTable::from_fn(3, |x| x & 0b110 == 0b110).unwrap();
        assert_eq!(self_shift(&t), Some(0b001));
    }

    #[test]
    fn well_posedness_examples() {
        let first_coordinate = TruthTable::from_fn(2, |x| x & 1 == 1).unwrap();
        assert!(!well_posed(&first_coordinate));
        assert!(well_posed(&and2()));
        assert!(well_posed(&delta3()));
    }
}
