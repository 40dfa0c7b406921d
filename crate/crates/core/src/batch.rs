//! Sequential and data-parallel drivers for independent workloads.
//!
//! The parallel path uses rayon and needs the `parallel` feature (on by
//! default). Without it `Execution::Parallel` runs sequentially, so callers
//! never have to branch on the feature.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run work in parallel.
    pub const fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Maps `op` over `items`, preserving order.
pub fn map<T, R, F>(exec: Execution, items: &[T], op: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(op).collect(),
        _ => items.iter().map(op).collect(),
    }
}
