//! Bit-parallel correlation kernel.
//!
//! `R_{a,b}(tau) = N - 2 * weight(a XOR L^tau(b))`, evaluated one 64-bit word
//! at a time with population counts. A full spectrum costs `O(N^2 / 64)`.

use rayon::prelude::*;

use crate::sequence::{BinarySequence, CyclicWindow, WORD_BITS};

/// Spectra at or above this period are split across the rayon pool.
const PARALLEL_MIN_PERIOD: usize = 512;

/// Precomputed state for correlating a fixed pair `(a, b)` at many lags.
pub struct Correlator<'a> {
    a: &'a [u64],
    b: CyclicWindow,
    period: usize,
    tail_mask: u64,
}

impl<'a> Correlator<'a> {
    /// Caller guarantees equal periods.
    pub fn new(a: &'a BinarySequence, b: &BinarySequence) -> Self {
        debug_assert_eq!(a.period(), b.period());
        let rem = a.period() % WORD_BITS;
        Self {
            a: a.words(),
            b: CyclicWindow::new(b),
            period: a.period(),
            tail_mask: if rem == 0 { u64::MAX } else { (1u64 << rem) - 1 },
        }
    }

    /// Correlation at `tau` with `0 <= tau < N`.
    #[inline]
    pub fn at(&self, tau: usize) -> i64 {
        let last = self.a.len() - 1;
        let mut differing = 0u32;
        for (w, &aw) in self.a.iter().enumerate() {
            let mut x = aw ^ self.b.window(tau + w * WORD_BITS);
            if w == last {
                x &= self.tail_mask;
            }
            differing += x.count_ones();
        }
        self.period as i64 - 2 * differing as i64
    }

    pub fn spectrum(&self) -> Vec<i64> {
        if self.period >= PARALLEL_MIN_PERIOD {
            (0..self.period).into_par_iter().map(|tau| self.at(tau)).collect()
        } else {
            (0..self.period).map(|tau| self.at(tau)).collect()
        }
    }
}
