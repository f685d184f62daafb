//! Work partitioning for the exhaustive searches.
//!
//! Every search in this crate splits its candidate space into a fixed number
//! of chunks (usually by the leading coordinate of the candidate), evaluates
//! the chunks independently and merges the per-chunk results in chunk order.
//! The merge order never depends on scheduling, so sequential and parallel
//! runs produce identical output.

use std::fmt;

/// Default candidate budget for brute-force searches.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// How chunked work is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled and falls
    /// back to sequential execution otherwise.
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Raised when a search would evaluate more candidates than allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub needed: u128,
    pub budget: u64,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "search space of {} candidates exceeds the budget of {}",
            self.needed, self.budget
        )
    }
}

impl std::error::Error for BudgetExceeded {}

/// Budget and execution strategy shared by all enumeration entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Search {
    pub budget: u64,
    pub strategy: Strategy,
}

impl Default for Search {
    fn default() -> Self {
        Search {
            budget: DEFAULT_BUDGET,
            strategy: Strategy::default(),
        }
    }
}

impl Search {
    pub fn with_budget(budget: u64) -> Self {
        Search {
            budget,
            ..Search::default()
        }
    }

    pub fn sequential(self) -> Self {
        Search {
            strategy: Strategy::Sequential,
            ..self
        }
    }

    pub fn check(&self, needed: u128) -> Result<(), BudgetExceeded> {
        if needed > self.budget as u128 {
            Err(BudgetExceeded {
                needed,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }
}

/// Evaluates `f` on every chunk index and returns the results in chunk order.
pub fn map_chunks<T, F>(strategy: Strategy, chunks: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy == Strategy::Parallel && chunks > 1 {
        use rayon::prelude::*;
        return (0..chunks).into_par_iter().map(f).collect();
    }
    let _ = strategy;
    (0..chunks).map(f).collect()
}

/// Sums a per-chunk count.
pub fn sum_chunks<F>(strategy: Strategy, chunks: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    map_chunks(strategy, chunks, f).into_iter().sum()
}

/// Mixed-radix odometer over `digits` positions each ranging over
/// `0..radix`. Returns `false` once every position has wrapped.
#[inline]
pub fn advance(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// `base^exp` without overflow, saturating at `u128::MAX`.
pub fn pow_u128(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
