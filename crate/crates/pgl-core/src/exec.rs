//! Data-parallel execution facade.
//!
//! Sweep cells, perturbation seeds and batch evaluations are independent, so
//! they map cleanly onto rayon. Building with `--no-default-features`
//! removes the rayon dependency entirely and `par_map` degrades to the
//! sequential path; `seq_map` is always sequential and exists so benchmarks
//! can compare the two on the same build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, in parallel when the `parallel` feature is enabled.
///
/// Output order matches input order regardless of scheduling.
#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Sequential fallback used when the crate is built without rayon.
#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Always-sequential map, kept for benchmark comparison.
pub fn seq_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_preserves_order() {
        let items: Vec<u64> = (0..257).collect();
        let par = par_map(&items, |x| x * x);
        let seq = seq_map(&items, |x| x * x);
        assert_eq!(par, seq);
    }
}
