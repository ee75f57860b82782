use rayon::prelude::*;
use sweepvor_core::bte::OrdinateExecutor;

/// Processes ordinates on the rayon thread pool. Results are collected in
/// ordinate order, so output does not depend on the thread count.
#[derive(Clone, Copy, Debug, Default)]
pub struct Parallel;

impl OrdinateExecutor for Parallel {
    fn map_ordinates<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).into_par_iter().map(f).collect()
    }
}
