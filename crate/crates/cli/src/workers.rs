//! Worker-pool plumbing: the `DECIC_WORKERS` environment variable selects
//! how many threads a subcommand may use (default 1). Work is split into
//! slices, each slice computed independently, and the merged result is
//! sorted and deduplicated, so the output is identical for every worker
//! count.

use std::env;
use std::thread;

pub const WORKERS_ENV: &str = "DECIC_WORKERS";

/// Number of workers requested via the environment (clamped to [1, 64]).
pub fn worker_count() -> usize {
    env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map(|n| n.clamp(1, 64))
        .unwrap_or(1)
}

/// Split `items` round-robin into `workers` slices, run `job` on each slice
/// in its own thread, and concatenate the results in slice order. Callers
/// must treat the concatenation as an unordered union (sort + dedup) so the
/// outcome is independent of the partition.
pub fn run_partitioned<T, R, F>(workers: usize, items: &[T], job: F) -> Vec<R>
where
    T: Clone + Send + Sync,
    R: Send,
    F: Fn(&[T]) -> Vec<R> + Send + Sync,
{
    let workers = workers.clamp(1, 64).min(items.len().max(1));
    if workers <= 1 {
        return job(items);
    }
    let slices: Vec<Vec<T>> = (0..workers)
        .map(|w| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| i % workers == w)
                .map(|(_, t)| t.clone())
                .collect()
        })
        .collect();
    let job = &job;
    thread::scope(|scope| {
        let handles: Vec<_> = slices
            .iter()
            .map(|slice| scope.spawn(move || job(slice)))
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
    fn partition_is_a_permutation_of_serial() {
        let items: Vec<i64> = (0..100).collect();
        let square = |xs: &[i64]| xs.iter().map(|x| x * x).collect::<Vec<_>>();
        for workers in [1, 2, 3, 4, 7] {
            let mut got = run_partitioned(workers, &items, square);
            got.sort();
            let mut want = square(&items);
            want.sort();
            assert_eq!(got, want, "workers = {workers}");
        }
    }

    #[test]
    fn empty_input_is_fine() {
        let got = run_partitioned(4, &[] as &[i64], |xs| xs.to_vec());
        assert!(got.is_empty());
    }
}
