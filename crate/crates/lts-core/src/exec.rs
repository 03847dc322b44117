//! Deterministic map helpers for the data-parallel inner loops.
//!
//! With the `parallel` feature the work runs on the rayon pool;
//! without it the same closures run on plain iterators. Results are
//! always collected in input order, so callers observe identical
//! output either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many items the rayon dispatch overhead outweighs the
/// per-item bracket arithmetic.
#[cfg(feature = "parallel")]
const MIN_FINE_LEN: usize = 128;

/// Map over cheap items (single bracket evaluations, residual checks).
pub(crate) fn map_fine<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if items.len() >= MIN_FINE_LEN {
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Map over expensive items (whole closure runs, Jacobian columns).
pub(crate) fn map_coarse<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if items.len() >= 2 {
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}
