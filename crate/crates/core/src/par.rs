//! Data-parallel helpers with a sequential fallback. Output order never
//! depends on the execution mode.

use crate::config::Execution;

/// All `m < count` with `keep(m)`, in increasing order.
pub(crate) fn filter_range<F>(count: u64, exec: Execution, keep: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel {
        use rayon::prelude::*;
        return (0..count).into_par_iter().filter(|&m| keep(m)).collect();
    }
    let _ = exec;
    (0..count).filter(|&m| keep(m)).collect()
}

/// `f` applied to every item, results in input order.
pub(crate) fn map<T, U, F>(items: &[T], exec: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let even = |m: u64| m.is_multiple_of(3);
        assert_eq!(filter_range(1000, Execution::Parallel, even), filter_range(1000, Execution::Sequential, even));
        let v: Vec<u32> = (0..100).collect();
        assert_eq!(map(&v, Execution::Parallel, |x| x * 2), map(&v, Execution::Sequential, |x| x * 2));
    }
}
