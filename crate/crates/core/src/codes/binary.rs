//! Gray-code enumeration of binary codes packed into `u128` words.

use std::sync::atomic::{AtomicBool, Ordering};

use crate::par::{self, Search};
use crate::ring::{Elem, FiniteRing};

pub(crate) struct BinaryRows {
    rows: Vec<u128>,
    n: usize,
}

// Leading rows fixed per chunk.
const SPLIT: usize = 6;

impl BinaryRows {
    /// `None` unless the ring has two elements and the length fits.
    pub(crate) fn pack(ring: &FiniteRing, rows: &[Vec<Elem>]) -> Option<BinaryRows> {
        let n = rows.first().map_or(0, |r| r.len());
        if ring.order() != 2 || n > 128 || rows.len() > 64 {
            return None;
        }
        let zero = ring.zero();
        let rows = rows
            .iter()
            .map(|r| r.iter().enumerate().fold(0u128, |m, (i, &x)| if x != zero { m | 1 << i } else { m }))
            .collect();
        Some(BinaryRows { rows, n })
    }

    /// Runs `visit` on every codeword; chunk `c` fixes the top rows to the
    /// bits of `c` and walks a Gray code over the rest.
    fn scan<T, I, V>(&self, search: &Search, init: I, visit: V) -> Vec<T>
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        V: Fn(&mut T, u128) -> bool + Sync + Send,
    {
        let k = self.rows.len();
        let top = k.min(SPLIT);
        let low = k - top;
        par::map_chunks(search.strategy, 1 << top, |c| {
            let mut t = init();
            let mut w = (0..top)
                .filter(|b| c >> b & 1 == 1)
                .fold(0u128, |acc, b| acc ^ self.rows[low + b]);
            if !visit(&mut t, w) {
                return t;
            }
            for i in 1u64..(1u64 << low) {
                w ^= self.rows[i.trailing_zeros() as usize];
                if !visit(&mut t, w) {
                    break;
                }
            }
            t
        })
    }

    pub(crate) fn histogram(&self, search: &Search) -> Vec<u64> {
        let chunks = self.scan(search, || vec![0u64; self.n + 1], |h, w| {
            h[w.count_ones() as usize] += 1;
            true
        });
        let mut out = vec![0u64; self.n + 1];
        for c in chunks {
            for (a, b) in out.iter_mut().zip(c) {
                *a += b;
            }
        }
        out
    }

    pub(crate) fn min_weight_above(&self, cutoff: u32, search: &Search) -> Option<u32> {
        let stop = AtomicBool::new(false);
        let chunks = self.scan(search, || u32::MAX, |m, w| {
            let wt = w.count_ones();
            if wt > 0 {
                if wt <= cutoff {
                    stop.store(true, Ordering::Relaxed);
                    return false;
                }
                *m = (*m).min(wt);
            }
            !stop.load(Ordering::Relaxed)
        });
        if stop.load(Ordering::Relaxed) {
            return None;
        }
        chunks.into_iter().min().filter(|&m| m != u32::MAX)
    }
}
