//! Ordered parallel map over shared immutable inputs.
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! results are always collected in input order, so callers see identical
//! output regardless of thread count.

use alloc::vec::Vec;

#[cfg(feature = "parallel")]
pub fn map_vec<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_vec<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}
