use std::ops::{Add, Sub};

use super::truth_table::{check_n, TruthTable};
use crate::error::{Error, Result};

/// Unnormalized in-place Walsh-Hadamard butterfly.
///
/// After the call `data[u] = sum_x data_in[x] * (-1)^<u,x>`. Applying it
/// twice multiplies every entry by `data.len()`.
pub fn fwht_in_place<T>(data: &mut [T])
where
    T: Copy + Add<Output = T> + Sub<Output = T>,
{
    let len = data.len();
    assert!(
        len.is_power_of_two(),
        "butterfly length must be a power of two"
    );
    let mut half = 1;
    while half < len {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half <<= 1;
    }
}

/// Integer Walsh-Hadamard sums `W(u) = sum_x (-1)^(f(x) + <u,x>)`.
pub fn wht_exact(t: &TruthTable) -> Vec<i64> {
    let mut w = t.signs();
    fwht_in_place(&mut w);
    w
}

/// Normalized Fourier coefficients of the ±1 form of a Boolean function.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    n: usize,
    coeffs: Vec<f64>,
}

/// Fourier spectrum `F̂(u) = 2^-n sum_x (-1)^(f(x) + <u,x>)` in `O(n 2^n)`.
///
/// Every intermediate of the butterfly is an integer of magnitude at most
/// `2^n`, so the float result is exact.
pub fn wht(t: &TruthTable) -> Result<Spectrum> {
    check_n(t.n())?;
    let mut coeffs: Vec<f64> = (0..t.len() as u64)
        .map(|x| if t.get(x) { -1.0 } else { 1.0 })
        .collect();
    fwht_in_place(&mut coeffs);
    let scale = (-(t.n() as f64)).exp2();
    coeffs.iter_mut().for_each(|c| *c *= scale);
    Ok(Spectrum { n: t.n(), coeffs })
}

impl Spectrum {
    /// Wraps raw coefficients without validation (used for fixtures and checks).
    pub fn from_coeffs(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_n(n)?;
        if coeffs.len() != 1 << n {
            return Err(Error::Dimension {
                expected: 1 << n,
                actual: coeffs.len(),
            });
        }
        Ok(Self { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn get(&self, u: u64) -> f64 {
        self.coeffs[u as usize]
    }

    /// `F̂(u)^2`, the outcome distribution of the sampling circuit.
    pub fn squared(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c * c).collect()
    }

    /// `sum_u F̂(u)^2`, equal to 1 for any Boolean function.
    pub fn parseval_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Largest distance of any coefficient from the lattice `2^(1-n) Z`.
    pub fn lattice_deviation(&self) -> f64 {
        let step = (1.0 - self.n as f64).exp2();
        self.coeffs
            .iter()
            .map(|c| {
                let k = c / step;
                (k - k.round()).abs() * step
            })
            .fold(0.0, f64::max)
    }

    /// CSV export with rows `u,coeff`, `u` as zero-padded binary.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,coeff\n");
        for (u, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{:0width$b},{}\n", u, c, width = self.n));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(t: &TruthTable) -> Vec<f64> {
        let size = t.len() as u64;
        (0..size)
            .map(|u| {
                let sum: i64 = (0..size)
                    .map(|x| {
                        let odd = t.get(x) ^ crate::boolfn::inner(u, x);
                        if odd {
                            -1
                        } else {
                            1
                        }
                    })
                    .sum();
                sum as f64 / size as f64
            })
            .collect()
    }

    #[test]
    fn and_on_two_bits() {
        let t = TruthTable::from_fn(2, |x| x == 3).unwrap();
        assert_eq!(wht(&t).unwrap().coeffs(), &[0.5, 0.5, 0.5, -0.5]);
    }

    #[test]
    fn constant_zero_on_one_bit() {
        let t = TruthTable::zeros(1).unwrap();
        assert_eq!(wht(&t).unwrap().coeffs(), &[1.0, 0.0]);
    }

    #[test]
    fn delta_on_three_bits() {
        let t = TruthTable::from_fn(3, |x| x == 0).unwrap();
        let sp = wht(&t).unwrap();
        assert_eq!(sp.get(0), 0.75);
        for u in 1..8 {
            assert_eq!(sp.get(u), -0.25);
        }
    }

    #[test]
    fn matches_definition_on_assorted_functions() {
        for n in 1..=7 {
            let t =
                TruthTable::from_fn(n, |x| (x.wrapping_mul(0x9e37_79b9) >> 3) & 1 == 1).unwrap();
            assert_eq!(wht(&t).unwrap().coeffs(), brute_force(&t).as_slice());
        }
    }

    #[test]
    fn butterfly_is_an_involution_up_to_scale() {
        let t = TruthTable::from_fn(9, |x| x % 5 == 1).unwrap();
        let signs = t.signs();
        let mut w = signs.clone();
        fwht_in_place(&mut w);
        fwht_in_place(&mut w);
        let back: Vec<i64> = w.iter().map(|v| v / t.len() as i64).collect();
        assert_eq!(back, signs);
    }

    #[test]
    fn csv_export_is_binary_padded() {
        let t = TruthTable::from_fn(2, |x| x == 3).unwrap();
        let csv = wht(&t).unwrap().to_csv();
        assert_eq!(csv, "u,coeff\n00,0.5\n01,0.5\n10,0.5\n11,-0.5\n");
    }

    #[test]
    fn lattice_deviation_flags_off_grid_coefficients() {
        let sp = Spectrum::from_coeffs(2, vec![0.5, 0.5, 0.5, -0.4]).unwrap();
        assert!((sp.lattice_deviation() - 0.1).abs() < 1e-12);
    }
}
