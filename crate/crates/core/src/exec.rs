//! Data-parallel helpers with a sequential fallback.
//!
//! With the default `parallel` feature the closures run on the rayon pool;
//! without it they run on the calling thread. Results always come back in
//! input order, so outputs are schedule-independent either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..len).map(f).collect()
}

/// Always-sequential twin of [`map_indexed`], kept available so benches can
/// compare the two code paths in one build.
pub(crate) fn map_indexed_seq<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..len).map(f).collect()
}
