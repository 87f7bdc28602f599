//! Fork-join helper. With the `parallel` feature the two closures may run on
//! the rayon pool; otherwise, or when `parallel` is false at the call site,
//! they run one after the other. Results are returned in argument order
//! either way, so callers stay deterministic.

#[inline]
pub fn join<A, B, RA, RB>(parallel: bool, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return rayon::join(a, b);
    }
    let _ = parallel;
    (a(), b())
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(parallel: bool, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn join_keeps_order() {
        for parallel in [false, true] {
            assert_eq!(super::join(parallel, || 1, || 2), (1, 2));
            assert_eq!(super::map(parallel, &[1, 2, 3], |x| x * 10), [10, 20, 30]);
        }
    }
}
