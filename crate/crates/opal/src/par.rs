//! Execution-strategy plumbing for the data-parallel kernels.
//!
//! Every parallel loop in this crate is an order-preserving map over an
//! index range, so the sequential and rayon paths produce bitwise identical
//! results. The `parallel` cargo feature selects the default; [`scoped`]
//! overrides it for the current thread (useful for benchmarks and for the
//! determinism tests that compare both paths).

use std::cell::Cell;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How data-parallel kernels execute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threading {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Threading {
    /// The default strategy: rayon when the `parallel` feature is enabled.
    pub fn auto() -> Self {
        #[cfg(feature = "parallel")]
        {
            Threading::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Threading::Sequential
        }
    }
}

thread_local! {
    static MODE: Cell<Option<Threading>> = const { Cell::new(None) };
}

/// The strategy in effect on the current thread.
pub fn mode() -> Threading {
    MODE.with(|m| m.get()).unwrap_or_else(Threading::auto)
}

/// Runs `f` with the given strategy forced on the current thread.
///
/// Sequential work stays on the calling thread, so nested library calls
/// inside `f` observe the override.
pub fn scoped<T>(threading: Threading, f: impl FnOnce() -> T) -> T {
    let prev = MODE.with(|m| m.replace(Some(threading)));
    let out = f();
    MODE.with(|m| m.set(prev));
    out
}

/// Order-preserving indexed map: `(0..n).map(f).collect()`.
pub fn map_indexed<U: Send>(n: usize, f: impl Fn(usize) -> U + Sync + Send) -> Vec<U> {
    match mode() {
        Threading::Sequential => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        Threading::Parallel => (0..n).into_par_iter().map(f).collect(),
    }
}

/// Order-preserving map over a slice.
pub fn map_slice<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    match mode() {
        Threading::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Threading::Parallel => items.par_iter().map(f).collect(),
    }
}

/// Short-circuiting search for the first index (in index order) where `f`
/// returns `Some`. Both paths return the same, smallest, witness.
pub fn find_first<U: Send>(n: usize, f: impl Fn(usize) -> Option<U> + Sync + Send) -> Option<U> {
    match mode() {
        Threading::Sequential => (0..n).find_map(f),
        #[cfg(feature = "parallel")]
        Threading::Parallel => (0..n).into_par_iter().find_map_first(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scoped_override_restores() {
        let before = mode();
        scoped(Threading::Sequential, || {
            assert_eq!(mode(), Threading::Sequential);
        });
        assert_eq!(mode(), before);
    }

    #[test]
    fn map_indexed_matches_sequential() {
        let seq = scoped(Threading::Sequential, || map_indexed(100, |i| i * i));
        let auto = map_indexed(100, |i| i * i);
        assert_eq!(seq, auto);
    }
}
