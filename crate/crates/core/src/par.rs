//! Data-parallel helpers.
//!
//! Every helper preserves input order in its output, so floating-point
//! reductions performed by callers over the returned vectors are identical
//! whether or not the `parallel` feature is enabled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Environment variable that caps the worker count.
pub const THREADS_ENV: &str = "QLO_THREADS";

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
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

pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

pub fn flat_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Vec<R> + Sync + Send,
{
    map(items, f).into_iter().flatten().collect()
}

/// Returns the first index (in input order) whose item fails `pred`.
pub fn find_failure<T, F>(items: &[T], pred: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().position_first(|x| !pred(x))
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().position(|x| !pred(x))
    }
}

/// Runs `f` on a dedicated pool with `threads` workers. Without the
/// `parallel` feature this simply calls `f`.
pub fn with_threads<R, F>(threads: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    {
        match rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}

/// Parses a thread cap as found in [`THREADS_ENV`].
pub fn parse_thread_cap(raw: &str) -> Result<usize, String> {
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")),
    }
}

/// Reads [`THREADS_ENV`] and, if set, sizes the global pool accordingly.
/// Returns the cap that was applied.
pub fn init_from_env() -> Result<Option<usize>, String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n = parse_thread_cap(&raw)?;
    #[cfg(feature = "parallel")]
    {
        // a second initialisation is harmless; the first cap wins
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(Some(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let v: Vec<u32> = (0..1000).collect();
        let out = map(&v, |x| x * 2);
        assert_eq!(out, v.iter().map(|x| x * 2).collect::<Vec<_>>());
    }

    #[test]
    fn find_failure_reports_first() {
        let v: Vec<u32> = (0..100).collect();
        assert_eq!(find_failure(&v, |&x| x % 17 != 5), Some(5));
        assert_eq!(find_failure(&v, |_| true), None);
    }

    #[test]
    fn thread_cap_parsing() {
        assert_eq!(parse_thread_cap("4"), Ok(4));
        assert!(parse_thread_cap("0").is_err());
        assert!(parse_thread_cap("x").is_err());
    }

    #[test]
    fn pinned_pool_runs_closure() {
        assert_eq!(with_threads(1, || map_range(4, |i| i + 1)), vec![1, 2, 3, 4]);
    }
}
