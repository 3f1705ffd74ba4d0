//! Search budgets, numeric tolerances and the seeded multi-start runner.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// Numeric tolerances shared by the witness systems, eigen solvers and TCP solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Margin for class predicates: `> 0` means `> margin`, `>= 0` means `>= -margin`,
    /// and witness equations must hold to within `margin`.
    pub margin: f64,
    /// Feasibility and complementarity residual bound for TCP solutions.
    pub tcp: f64,
    /// Max-norm defect bound for eigenpairs.
    pub eig: f64,
    /// Max-norm distance below which two solutions or eigenpairs are merged.
    pub dedup: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { margin: 1e-8, tcp: 1e-8, eig: 1e-9, dedup: 1e-6 }
    }
}

impl Tolerances {
    /// Applies a `KEY=VALUE` override; values must lie in `[1e-14, 1e-2]`.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(1e-14..=1e-2).contains(&value) {
            return input(format!("tolerance {key}={value} outside [1e-14, 1e-2]"));
        }
        match key {
            "margin" => self.margin = value,
            "tcp" => self.tcp = value,
            "eig" => self.eig = value,
            "dedup" => self.dedup = value,
            _ => return input(format!("unknown tolerance key {key:?} (expected margin, tcp, eig or dedup)")),
        }
        Ok(())
    }
}

/// Work limits for the randomized searches. Every random draw derives from `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub max_starts: usize,
    pub max_iters: usize,
    /// Wall-clock limit in milliseconds; ignored on targets without a clock.
    pub time_ms: Option<u64>,
    pub seed: u64,
    pub threads: usize,
    pub tol: Tolerances,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_starts: 32, max_iters: 200, time_ms: None, seed: 0, threads: 1, tol: Tolerances::default() }
    }
}

impl Budget {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_starts == 0 || self.max_iters == 0 || self.threads == 0 {
            return input("budget fields must be positive");
        }
        if self.time_ms == Some(0) {
            return input("time budget must be positive");
        }
        Ok(())
    }

    /// Independent random stream for start number `index`.
    pub(crate) fn rng(&self, salt: u64, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ salt.rotate_left(17));
        rng.set_stream(index as u64);
        rng
    }
}

/// Counters reported alongside search results.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetUsed {
    pub starts: usize,
    pub iterations: usize,
    pub candidates: usize,
}

impl BudgetUsed {
    pub(crate) fn absorb(&mut self, other: BudgetUsed) {
        self.starts += other.starts;
        self.iterations += other.iterations;
        self.candidates += other.candidates;
    }
}

#[cfg(not(target_arch = "wasm32"))]
struct Deadline(Option<std::time::Instant>);

#[cfg(not(target_arch = "wasm32"))]
impl Deadline {
    fn new(ms: Option<u64>) -> Self {
        Self(ms.map(|ms| std::time::Instant::now() + std::time::Duration::from_millis(ms)))
    }
    fn passed(&self) -> bool {
        self.0.is_some_and(|d| std::time::Instant::now() >= d)
    }
}

#[cfg(target_arch = "wasm32")]
struct Deadline;

#[cfg(target_arch = "wasm32")]
impl Deadline {
    fn new(_ms: Option<u64>) -> Self {
        Deadline
    }
    fn passed(&self) -> bool {
        false
    }
}

/// Result of one start: an optional hit plus the iterations it consumed.
pub(crate) struct StartOutcome<T> {
    pub hit: Option<T>,
    pub iterations: usize,
}

/// Runs starts `0..count` and returns the lowest-index hit.
///
/// With `threads > 1` starts are evaluated in batches of `threads`; the
/// selection is still the lowest index, so the result does not depend on the
/// thread count.
pub(crate) fn first_hit<T, F>(budget: &Budget, count: usize, f: F) -> (Option<(usize, T)>, BudgetUsed)
where
    T: Send,
    F: Fn(usize) -> StartOutcome<T> + Sync,
{
    let mut used = BudgetUsed::default();
    let deadline = Deadline::new(budget.time_ms);
    let batch = budget.threads.max(1);
    let mut start = 0;
    while start < count {
        if deadline.passed() {
            break;
        }
        let end = (start + batch).min(count);
        let outcomes = run_batch(start, end, batch, &f);
        for (offset, out) in outcomes.into_iter().enumerate() {
            used.starts += 1;
            used.iterations += out.iterations;
            if let Some(hit) = out.hit {
                return (Some((start + offset, hit)), used);
            }
        }
        start = end;
    }
    (None, used)
}

/// Runs every start and collects all hits in index order.
pub(crate) fn all_hits<T, F>(budget: &Budget, count: usize, f: F) -> (Vec<T>, BudgetUsed)
where
    T: Send,
    F: Fn(usize) -> StartOutcome<T> + Sync,
{
    let mut used = BudgetUsed::default();
    let mut hits = Vec::new();
    let deadline = Deadline::new(budget.time_ms);
    let batch = budget.threads.max(1);
    let mut start = 0;
    while start < count {
        if deadline.passed() {
            break;
        }
        let end = (start + batch).min(count);
        for out in run_batch(start, end, batch, &f) {
            used.starts += 1;
            used.iterations += out.iterations;
            hits.extend(out.hit);
        }
        start = end;
    }
    (hits, used)
}

fn run_batch<T, F>(start: usize, end: usize, threads: usize, f: &F) -> Vec<StartOutcome<T>>
where
    T: Send,
    F: Fn(usize) -> StartOutcome<T> + Sync,
{
    if threads <= 1 || end - start <= 1 {
        return (start..end).map(f).collect();
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = (start..end).map(|i| scope.spawn(move || f(i))).collect();
        handles.into_iter().map(|h| h.join().expect("start panicked")).collect()
    })
}
