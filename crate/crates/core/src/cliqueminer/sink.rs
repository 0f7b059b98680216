use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use super::MineError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SinkMode {
    Count,
    Collect,
    Stream,
}

enum Target<'a, T> {
    Count,
    Collect { items: Mutex<Vec<T>>, cap: Option<usize> },
    Stream(Box<dyn Fn(T) + Send + Sync + 'a>),
}

/// Destination for mined patterns, safe for concurrent emission.
///
/// `count()` always equals the number of accepted emissions. Emission order
/// under parallel kernels is unspecified.
pub struct Sink<'a, T> {
    count: AtomicU64,
    target: Target<'a, T>,
}

impl<'a, T: Send> Sink<'a, T> {
    pub fn counting() -> Self {
        Sink { count: AtomicU64::new(0), target: Target::Count }
    }

    pub fn collecting() -> Self {
        Sink { count: AtomicU64::new(0), target: Target::Collect { items: Mutex::new(Vec::new()), cap: None } }
    }

    /// Collects at most `cap` patterns; the next emission fails with
    /// [`MineError::SinkOverflow`].
    pub fn collecting_with_cap(cap: usize) -> Self {
        Sink { count: AtomicU64::new(0), target: Target::Collect { items: Mutex::new(Vec::new()), cap: Some(cap) } }
    }

    pub fn streaming(callback: impl Fn(T) + Send + Sync + 'a) -> Self {
        Sink { count: AtomicU64::new(0), target: Target::Stream(Box::new(callback)) }
    }

    pub fn mode(&self) -> SinkMode {
        match self.target {
            Target::Count => SinkMode::Count,
            Target::Collect { .. } => SinkMode::Collect,
            Target::Stream(_) => SinkMode::Stream,
        }
    }

    /// Whether kernels must materialize each pattern, as opposed to only
    /// reporting counts through [`Sink::add_count`].
    pub fn needs_items(&self) -> bool {
        !matches!(self.target, Target::Count)
    }

    /// Records one pattern; `make` runs only when the pattern is kept.
    pub fn emit_with(&self, make: impl FnOnce() -> T) -> Result<(), MineError> {
        match &self.target {
            Target::Count => {}
            Target::Collect { items, cap } => {
                let mut items = items.lock().expect("sink mutex poisoned");
                if let Some(cap) = *cap {
                    if items.len() >= cap {
                        return Err(MineError::SinkOverflow { cap });
                    }
                }
                items.push(make());
            }
            Target::Stream(f) => f(make()),
        }
        self.count.fetch_add(1, Ordering::Relaxed);
        Ok(())
    }

    pub fn emit(&self, item: T) -> Result<(), MineError> {
        self.emit_with(|| item)
    }

    /// Bulk-adds patterns that were counted but not materialized. Only
    /// meaningful for counting sinks.
    pub fn add_count(&self, n: u64) {
        debug_assert!(!self.needs_items(), "add_count on a sink that needs items");
        self.count.fetch_add(n, Ordering::Relaxed);
    }

    pub fn count(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }

    /// Collected patterns; empty for counting and streaming sinks.
    pub fn into_items(self) -> Vec<T> {
        match self.target {
            Target::Collect { items, .. } => items.into_inner().expect("sink mutex poisoned"),
            _ => Vec::new(),
        }
    }
}
