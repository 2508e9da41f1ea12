//! Block-parallel helpers. With the `parallel` feature, blocks run on the
//! rayon pool; without it they run in order on the calling thread. Results
//! are always returned in block order so downstream reductions do not
//! depend on the worker count.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution mode compiled into this build.
#[cfg(feature = "parallel")]
pub const MODE: &str = "parallel";
#[cfg(not(feature = "parallel"))]
pub const MODE: &str = "sequential";

fn block_ranges(len: u64, block: u64) -> Vec<Range<u64>> {
    let block = block.max(1);
    let count = len.div_ceil(block);
    (0..count)
        .map(|b| (b * block)..((b + 1) * block).min(len))
        .collect()
}

/// Splits `0..len` into fixed-size blocks and maps each one.
pub fn map_blocks<T, F>(len: u64, block: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
{
    let ranges = block_ranges(len, block);
    #[cfg(feature = "parallel")]
    {
        ranges.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ranges.into_iter().map(f).collect()
    }
}

/// Maps every item of a slice, preserving order.
pub fn map_items<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Fallible variant of [`map_blocks`]; the first error in block order wins.
pub fn try_map_blocks<T, F>(len: u64, block: u64, f: F) -> crate::Result<Vec<T>>
where
    T: Send,
    F: Fn(Range<u64>) -> crate::Result<T> + Sync + Send,
{
    map_blocks(len, block, f).into_iter().collect()
}

/// Pairwise tree reduction in a fixed shape.
pub fn tree_reduce<T: Clone>(mut items: Vec<T>, identity: T, combine: impl Fn(&T, &T) -> T) -> T {
    if items.is_empty() {
        return identity;
    }
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len().div_ceil(2));
        for pair in items.chunks(2) {
            match pair {
                [a, b] => next.push(combine(a, b)),
                [a] => next.push(a.clone()),
                _ => unreachable!(),
            }
        }
        items = next;
    }
    items.pop().unwrap()
}
