//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use relsim_core::scalar::rational;
use relsim_core::{Event, EventSet, FinitePartition, Scalar};

/// `n` events on the time axis.
pub fn line_events(n: usize) -> Arc<EventSet> {
    Arc::new(EventSet::from_events((0..n as i64).map(|t| Event::from_ints([0, 0, 0, t]))))
}

/// Two partitions of `base` whose join is a single block: `{2i, 2i+1}` and `{2i+1, 2i+2}`.
pub fn interleaved_pairs(base: &Arc<EventSet>) -> (FinitePartition, FinitePartition) {
    let n = base.len();
    let even = FinitePartition::from_pairs(base, (0..n.saturating_sub(1)).step_by(2).map(|i| (i, i + 1)));
    let odd = FinitePartition::from_pairs(base, (1..n.saturating_sub(1)).step_by(2).map(|i| (i, i + 1)));
    (even, odd)
}

/// Pell pairs `a + b√2` with `a² - 2b² = ±1`, so both terms are large and nearly cancel.
pub fn pell_scalars(count: usize) -> Vec<Scalar> {
    let (mut a, mut b) = (1i64, 1i64);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(Scalar::new(rational(-a, 1), rational(b, 1)));
        (a, b) = (a + 2 * b, a + b);
        if a > 1 << 40 {
            (a, b) = (1, 1);
        }
    }
    out
}
