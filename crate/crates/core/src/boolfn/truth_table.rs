use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of input bits.
pub const MAX_N: usize = 28;

const WORD_BITS: usize = 64;

/// A Boolean function on `n` bits stored as a packed truth table.
///
/// Bit `x` of the table holds `f(x)`. Coordinate `i` of an input is bit `i`
/// of the integer `x`, so the inner product of `u` and `v` is the parity of
/// `u & v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::Size { n, max: MAX_N })
    }
}

/// Parity of the inner product of two bit vectors.
#[inline]
pub fn inner(u: u64, v: u64) -> bool {
    (u & v).count_ones() & 1 == 1
}

/// Applies the index permutation `x -> x ^ c` to the bits of one word (`c < 64`).
#[inline]
fn xor_permute_word(mut w: u64, c: usize) -> u64 {
    const MASKS: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    for (k, mask) in MASKS.iter().enumerate() {
        if c >> k & 1 == 1 {
            let s = 1 << k;
            w = ((w >> s) & mask) | ((w & mask) << s);
        }
    }
    w
}

impl TruthTable {
    /// The constant-zero function on `n` bits.
    pub fn zeros(n: usize) -> Result<Self> {
        check_n(n)?;
        let words = vec![0u64; (1usize << n).div_ceil(WORD_BITS)];
        Ok(Self { n, words })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(u64) -> bool) -> Result<Self> {
        let mut t = Self::zeros(n)?;
        for x in 0..t.len() as u64 {
            if f(x) {
                t.set(x, true);
            }
        }
        Ok(t)
    }

    /// Builds a table from one bit per input, index 0 first.
    pub fn from_bits(n: usize, bits: &[bool]) -> Result<Self> {
        check_n(n)?;
        if bits.len() != 1 << n {
            return Err(Error::Dimension {
                expected: 1 << n,
                actual: bits.len(),
            });
        }
        Self::from_fn(n, |x| bits[x as usize])
    }

    pub(crate) fn from_words(n: usize, mut words: Vec<u64>) -> Result<Self> {
        check_n(n)?;
        let len = 1usize << n;
        let need = len.div_ceil(WORD_BITS);
        if words.len() != need {
            return Err(Error::Dimension {
                expected: need * WORD_BITS,
                actual: words.len() * WORD_BITS,
            });
        }
        if len < WORD_BITS {
            words[0] &= (1u64 << len) - 1;
        }
        Ok(Self { n, words })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of entries, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, x: u64) -> bool {
        let x = x as usize;
        debug_assert!(x < self.len());
        self.words[x / WORD_BITS] >> (x % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: u64, bit: bool) {
        let x = x as usize;
        assert!(x < self.len(), "index {x} out of range for n={}", self.n);
        let mask = 1u64 << (x % WORD_BITS);
        if bit {
            self.words[x / WORD_BITS] |= mask;
        } else {
            self.words[x / WORD_BITS] &= !mask;
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// The table of `x -> f(x ^ s)`.
    pub fn shifted(&self, s: u64) -> Self {
        let s = s as usize;
        let (hi, lo) = (s / WORD_BITS, s % WORD_BITS);
        let words = (0..self.words.len())
            .map(|w| xor_permute_word(self.words[w ^ hi], lo))
            .collect();
        Self { n: self.n, words }
    }

    /// Number of inputs where `f(x) != f(x ^ v)`.
    pub fn disagreement_count(&self, v: u64) -> u64 {
        let v = v as usize;
        let (hi, lo) = (v / WORD_BITS, v % WORD_BITS);
        self.words
            .iter()
            .enumerate()
            .map(|(w, &word)| (word ^ xor_permute_word(self.words[w ^ hi], lo)).count_ones() as u64)
            .sum()
    }

    /// The ±1-valued form `F(x) = (-1)^f(x)`.
    pub fn signs(&self) -> Vec<i64> {
        (0..self.len() as u64)
            .map(|x| if self.get(x) { -1 } else { 1 })
            .collect()
    }

    /// The table as a `0`/`1` string, index 0 first.
    pub fn to_bit_string(&self) -> String {
        (0..self.len() as u64)
            .map(|x| if self.get(x) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 8 {
            write!(f, "TruthTable(n={}, {})", self.n, self.to_bit_string())
        } else {
            write!(f, "TruthTable(n={}, weight={})", self.n, self.count_ones())
        }
    }
}
