//! Data-parallel mapping with a sequential fallback.
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] runs on the rayon
//! pool. Without it every call is sequential.

/// Execution strategy for point grids and sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

/// Environment variable read by [`init_threads`].
pub const THREADS_ENV: &str = "DLOP_THREADS";

impl Exec {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel => par_map(items, f),
        }
    }

    /// Whether this build can run in parallel at all.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Configure the global pool from an explicit count or [`THREADS_ENV`].
///
/// Returns the thread count in effect. Calling it twice is harmless; the
/// first configuration wins.
pub fn init_threads(explicit: Option<usize>) -> usize {
    let from_env = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    let wanted = explicit.filter(|&n| n > 0).or(from_env);
    configure(wanted)
}

#[cfg(feature = "parallel")]
fn configure(wanted: Option<usize>) -> usize {
    if let Some(n) = wanted {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    rayon::current_num_threads()
}

#[cfg(not(feature = "parallel"))]
fn configure(_wanted: Option<usize>) -> usize {
    1
}
