//! Order-preserving fan-out over scoped threads.

/// Maps `f` over `items` using up to `workers` threads. Results come back in
/// input order, so callers that fold them sequentially get the same answer
/// for any worker count.
pub(crate) fn ordered_map<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = workers.max(1).min(items.len().max(1));
    if workers == 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                scope.spawn(move || part.iter().map(f).collect::<Vec<R>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_for_any_worker_count() {
        let items: Vec<u64> = (0..103).collect();
        let serial = ordered_map(&items, 1, |x| x * x);
        for w in [2, 3, 8, 200] {
            assert_eq!(ordered_map(&items, w, |x| x * x), serial);
        }
        assert!(ordered_map(&Vec::<u8>::new(), 4, |x| *x).is_empty());
    }
}
