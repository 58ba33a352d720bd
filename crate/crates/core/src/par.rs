//! Data-parallel helpers for the exhaustive loops (table validation, point
//! enumeration).
//!
//! With the `parallel` feature the work is spread with rayon; without it, or
//! when [`Strategy::Sequential`] is requested, plain iterators are used. Both
//! paths return identical results: searches report the *first* hit in index
//! order, never whichever thread finished first.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How an exhaustive loop is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Smallest index in `range` for which `f` returns `Some`, and its value.
pub fn find_first<T, F>(range: Range<usize>, strategy: Strategy, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => range.into_par_iter().find_map_first(f),
        _ => range.into_iter().find_map(f),
    }
}

/// `true` iff `f` holds on every index of `range`.
pub fn all<F>(range: Range<usize>, strategy: Strategy, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => range.into_par_iter().all(f),
        _ => range.into_iter().all(f),
    }
}

/// `f` applied to every index, collected in index order.
pub fn map<T, F>(range: Range<usize>, strategy: Strategy, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => range.into_par_iter().map(f).collect(),
        _ => range.into_iter().map(f).collect(),
    }
}
