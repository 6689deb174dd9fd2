//! Data-parallel helpers. With the default `parallel` feature these fan out
//! through rayon; without it they reduce to plain sequential iteration so
//! the crate builds and behaves identically on single-threaded targets.
//! Outputs are always assembled in input order, so results are independent
//! of the execution schedule.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Map over index chunks of an output range; used by the big-int
/// convolution to parallelize per output coefficient block.
#[cfg(feature = "parallel")]
pub fn par_chunk_map<U, F>(len: usize, chunk: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(std::ops::Range<usize>) -> U + Sync + Send,
{
    let ranges: Vec<_> = (0..len)
        .step_by(chunk.max(1))
        .map(|lo| lo..(lo + chunk).min(len))
        .collect();
    ranges.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_chunk_map<U, F>(len: usize, chunk: usize, f: F) -> Vec<U>
where
    F: Fn(std::ops::Range<usize>) -> U,
{
    (0..len)
        .step_by(chunk.max(1))
        .map(|lo| f(lo..(lo + chunk).min(len)))
        .collect()
}
