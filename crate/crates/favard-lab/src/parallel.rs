//! Deterministic fan-out over indexed work items.
//!
//! Workers pull indices from a shared counter; results are re-assembled in
//! index order, so the output is independent of the thread count and of
//! scheduling. Every parallel site in this crate derives per-index state
//! (e.g. RNG streams) from the index, never from arrival order.

use std::sync::atomic::{AtomicUsize, Ordering};

/// Thread count from the flag, the `FAVARD_LAB_THREADS` environment
/// variable, or one.
pub fn resolve_threads(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("FAVARD_LAB_THREADS")
            .ok()
            .and_then(|s| s.trim().parse().ok())
    })
    .unwrap_or(1)
    .max(1)
}

/// Maps `f` over `0..count` on up to `threads` workers and returns the
/// results in index order.
pub fn parallel_map<T, F>(count: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = threads.clamp(1, count.max(1));
    if workers == 1 {
        return (0..count).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let mut indexed: Vec<(usize, T)> = Vec::with_capacity(count);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= count {
                            break;
                        }
                        local.push((i, f(i)));
                    }
                    local
                })
            })
            .collect();
        for h in handles {
            indexed.extend(h.join().expect("worker panicked"));
        }
    });
    indexed.sort_by_key(|&(i, _)| i);
    indexed.into_iter().map(|(_, v)| v).collect()
}
