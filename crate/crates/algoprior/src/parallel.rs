//! Multi-threaded prior estimation.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use algoprior_core::enumerator::Search;
use algoprior_core::{BitString, Budget, Estimator, MachineId, PriorEstimate};

/// Environment variable capping the worker count.
pub const THREADS_VAR: &str = "ALGOPRIOR_THREADS";

/// Splits the witness search tree into subtrees and explores them on a pool of
/// scoped threads. Results are merged canonically, so they never depend on the
/// worker count or on scheduling.
#[derive(Clone, Copy, Debug)]
pub struct Parallel {
    threads: NonZeroUsize,
}

impl Parallel {
    pub fn new(threads: NonZeroUsize) -> Self {
        Parallel { threads }
    }

    /// Worker count from `ALGOPRIOR_THREADS`, defaulting to the machine's parallelism.
    pub fn from_env() -> Result<Self, String> {
        let threads = match std::env::var(THREADS_VAR) {
            Ok(value) => value
                .trim()
                .parse::<NonZeroUsize>()
                .map_err(|_| format!("{THREADS_VAR} must be a positive integer, got {value:?}"))?,
            Err(_) => thread::available_parallelism().unwrap_or(NonZeroUsize::MIN),
        };
        Ok(Parallel::new(threads))
    }

    pub fn threads(&self) -> usize {
        self.threads.get()
    }
}

impl Estimator for Parallel {
    fn estimate(&self, machine: MachineId, target: &BitString, budget: Budget) -> PriorEstimate {
        let search = Search::new(machine, target, budget);
        let workers = self.threads.get();
        if workers == 1 {
            return search.finish([search.explore(search.root())]);
        }
        let (early, frontier) = search.split(workers * 8);
        let next = AtomicUsize::new(0);
        let found = thread::scope(|scope| {
            let handles: Vec<_> = (0..workers.min(frontier.len()))
                .map(|_| {
                    scope.spawn(|| {
                        let mut mine = Vec::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            let Some(node) = frontier.get(i) else { break };
                            mine.extend(search.explore(node.clone()));
                        }
                        mine
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect::<Vec<_>>()
        });
        search.finish(std::iter::once(early).chain(found))
    }
}
