//! Bit-packed GF(2) vectors and an incrementally reduced basis carrying
//! right-hand sides, used to accumulate the equations `<u, s> = b`.

use std::fmt;

use crate::boolfn::inner;
use crate::error::{Error, Result};

/// An `n`-bit vector over GF(2); bit `i` is coordinate `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    n: usize,
    bits: u64,
}

impl Gf2Vector {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        if n == 0 || n > 63 || bits >> n != 0 {
            return Err(Error::Argument(format!(
                "{bits:#x} is not an {n}-bit vector"
            )));
        }
        Ok(Self { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn dot(&self, other: &Gf2Vector) -> bool {
        inner(self.bits, other.bits)
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.n)
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InsertOutcome {
    /// The vector was outside the span; rank grew by one.
    Extended,
    /// Already in the span with a consistent right-hand side.
    Redundant,
    /// Already in the span but its right-hand side contradicts the basis.
    Inconsistent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Row {
    pivot: u32,
    vector: u64,
    rhs: bool,
}

/// Reduced row-echelon basis over GF(2).
///
/// Each row's pivot is its highest set bit, rows are sorted by decreasing
/// pivot, and every row is zero in all other rows' pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Basis {
    n: usize,
    rows: Vec<Row>,
}

impl Gf2Basis {
    pub fn new(n: usize) -> Self {
        assert!((1..=63).contains(&n), "basis dimension {n} out of range");
        Self {
            n,
            rows: Vec::with_capacity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows as `(pivot, reduced vector, rhs)` in order of decreasing pivot.
    pub fn rows(&self) -> impl Iterator<Item = (usize, Gf2Vector, bool)> + '_ {
        self.rows.iter().map(move |r| {
            (
                r.pivot as usize,
                Gf2Vector {
                    n: self.n,
                    bits: r.vector,
                },
                r.rhs,
            )
        })
    }

    fn check_dim(&self, u: &Gf2Vector) -> Result<()> {
        if u.n != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: u.n,
            });
        }
        Ok(())
    }

    /// Reduces `u` against the basis, returning the residual and the
    /// accumulated right-hand side parity.
    fn reduce(&self, mut u: u64, mut rhs: bool) -> (u64, bool) {
        for row in &self.rows {
            if u >> row.pivot & 1 == 1 {
                u ^= row.vector;
                rhs ^= row.rhs;
            }
        }
        (u, rhs)
    }

    /// Adds the equation `<u, s> = b`.
    pub fn insert(&mut self, u: Gf2Vector, b: bool) -> Result<InsertOutcome> {
        self.check_dim(&u)?;
        let (residual, rhs) = self.reduce(u.bits, b);
        if residual == 0 {
            return Ok(if rhs {
                InsertOutcome::Inconsistent
            } else {
                InsertOutcome::Redundant
            });
        }
        let pivot = 63 - residual.leading_zeros();
        for row in &mut self.rows {
            if row.vector >> pivot & 1 == 1 {
                row.vector ^= residual;
                row.rhs ^= rhs;
            }
        }
        let at = self.rows.partition_point(|r| r.pivot > pivot);
        self.rows.insert(
            at,
            Row {
                pivot,
                vector: residual,
                rhs,
            },
        );
        Ok(InsertOutcome::Extended)
    }

    pub fn in_span(&self, u: u64) -> bool {
        self.reduce(u, false).0 == 0
    }

    /// The unique `s` satisfying every inserted equation.
    pub fn solve(&self) -> Result<Gf2Vector> {
        if self.rank() < self.n {
            return Err(Error::Underdetermined {
                rank: self.rank(),
                n: self.n,
            });
        }
        // full rank and fully reduced: row with pivot p is the unit vector e_p
        let s = self
            .rows
            .iter()
            .fold(0u64, |s, r| if r.rhs { s | 1 << r.pivot } else { s });
        if let Some(bad) = self.rows.iter().find(|r| inner(r.vector, s) != r.rhs) {
            return Err(Error::Argument(format!(
                "back-substitution failed at pivot {}",
                bad.pivot
            )));
        }
        Ok(Gf2Vector { n: self.n, bits: s })
    }

    /// When the rank is `n - 1`, the unique nonzero vector orthogonal to the span.
    pub fn hyperplane_normal(&self) -> Option<Gf2Vector> {
        if self.rank() + 1 != self.n {
            return None;
        }
        let pivots = self.rows.iter().fold(0u64, |m, r| m | 1 << r.pivot);
        let free = (!pivots).trailing_zeros();
        let normal = self
            .rows
            .iter()
            .filter(|r| r.vector >> free & 1 == 1)
            .fold(1u64 << free, |v, r| v | 1 << r.pivot);
        Some(Gf2Vector {
            n: self.n,
            bits: normal,
        })
    }
}
