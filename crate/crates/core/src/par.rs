//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers dispatch to rayon; without it (or
//! after [`force_sequential`]) they run on the calling thread. Reductions use
//! fixed-size chunks whose partial results are combined in index order, so the
//! floating-point result is bit-identical in both modes.

use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Chunk length used by [`chunked_sum`].
pub const REDUCE_CHUNK: usize = 2048;

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Forces every helper onto the calling thread (used by benchmarks to compare
/// both execution paths in one binary).
pub fn force_sequential(on: bool) {
    FORCE_SEQUENTIAL.store(on, Ordering::SeqCst);
}

/// True when the rayon path is compiled in and not disabled at runtime.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.load(Ordering::SeqCst)
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Maps `f` over `0..n`, preserving order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Sums `term(i)` for `i in 0..n`. Terms are summed sequentially inside chunks
/// of [`REDUCE_CHUNK`] and the chunk totals are added in order.
pub fn chunked_sum<T, F>(n: usize, term: F) -> T
where
    T: Send + std::iter::Sum<T>,
    F: Fn(usize) -> T + Sync + Send,
{
    let chunks = n.div_ceil(REDUCE_CHUNK);
    let partial = map_range(chunks, |c| {
        let lo = c * REDUCE_CHUNK;
        let hi = (lo + REDUCE_CHUNK).min(n);
        (lo..hi).map(&term).sum::<T>()
    });
    partial.into_iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunked_sum_matches_in_both_modes() {
        let f = |i: usize| 1.0 / (1.0 + i as f64).powi(2);
        let a: f64 = chunked_sum(50_000, f);
        force_sequential(true);
        let b: f64 = chunked_sum(50_000, f);
        force_sequential(false);
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn map_preserves_order() {
        let v: Vec<usize> = (0..1000).collect();
        assert_eq!(map(&v, |x| x * 2), (0..1000).map(|x| x * 2).collect::<Vec<_>>());
        assert!(map_range(0, |i| i).is_empty());
    }
}
