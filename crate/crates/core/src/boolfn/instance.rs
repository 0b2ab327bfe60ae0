use std::sync::atomic::{AtomicU64, Ordering};

use super::influence::self_shift;
use super::truth_table::TruthTable;
use crate::error::{Error, Result};

/// Oracle call counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryCounts {
    pub f: u64,
    pub g: u64,
}

impl QueryCounts {
    pub fn total(&self) -> u64 {
        self.f + self.g
    }

    pub fn since(&self, earlier: QueryCounts) -> QueryCounts {
        QueryCounts {
            f: self.f - earlier.f,
            g: self.g - earlier.g,
        }
    }
}

/// A hidden shift instance: oracles for `f` and `g(x) = f(x ^ s)`.
///
/// The shift is private to the crate. Solvers see the instance only through
/// counted oracle calls; the state-vector simulator reads the `g` table when
/// it applies `O_g` as a unitary.
#[derive(Debug)]
pub struct BhspInstance {
    f: TruthTable,
    g: TruthTable,
    shift: u64,
    f_queries: AtomicU64,
    g_queries: AtomicU64,
}

impl BhspInstance {
    /// Builds an instance, rejecting functions with a nontrivial self-shift.
    pub fn new(f: TruthTable, shift: u64) -> Result<Self> {
        if let Some(v) = self_shift(&f) {
            return Err(Error::IllPosed(v));
        }
        Self::new_unchecked(f, shift)
    }

    /// Builds an instance without the well-posedness check.
    pub fn new_unchecked(f: TruthTable, shift: u64) -> Result<Self> {
        if shift >> f.n() != 0 {
            return Err(Error::Argument(format!(
                "shift {shift:#x} out of range for n={}",
                f.n()
            )));
        }
        let g = f.shifted(shift);
        Ok(Self {
            f,
            g,
            shift,
            f_queries: AtomicU64::new(0),
            g_queries: AtomicU64::new(0),
        })
    }

    pub fn n(&self) -> usize {
        self.f.n()
    }

    /// The public function `f`.
    pub fn function(&self) -> &TruthTable {
        &self.f
    }

    pub fn query_f(&self, x: u64) -> bool {
        self.f_queries.fetch_add(1, Ordering::Relaxed);
        self.f.get(x)
    }

    pub fn query_g(&self, x: u64) -> bool {
        self.g_queries.fetch_add(1, Ordering::Relaxed);
        self.g.get(x)
    }

    pub fn counts(&self) -> QueryCounts {
        QueryCounts {
            f: self.f_queries.load(Ordering::Relaxed),
            g: self.g_queries.load(Ordering::Relaxed),
        }
    }

    pub(crate) fn charge(&self, f: u64, g: u64) {
        self.f_queries.fetch_add(f, Ordering::Relaxed);
        self.g_queries.fetch_add(g, Ordering::Relaxed);
    }

    pub(crate) fn g_table(&self) -> &TruthTable {
        &self.g
    }

    pub(crate) fn secret_shift(&self) -> u64 {
        self.shift
    }
}
