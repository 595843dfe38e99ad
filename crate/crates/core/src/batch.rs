//! Index-ordered batch evaluation. With the `parallel` feature the work is
//! spread over the rayon pool; results always come back in index order.

/// Evaluates `f(0..n)` on the current thread.
pub fn map_sequential<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Evaluates `f(0..n)` on the rayon pool.
#[cfg(feature = "parallel")]
pub fn map_parallel<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

/// Parallel when the `parallel` feature is enabled, sequential otherwise.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_parallel(n, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(n, f)
    }
}
