use std::time::Instant;

use serde::Serialize;

/// Outcome of an exhaustive check: how many cases were examined and the
/// certificates of any that failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report<V> {
    pub checked: usize,
    pub violations: Vec<V>,
    pub runtime_ms: u128,
}

impl<V> Report<V> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Merges another report into this one, summing counts and runtimes.
    pub fn absorb(&mut self, other: Report<V>) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.runtime_ms += other.runtime_ms;
    }
}

impl<V> Default for Report<V> {
    fn default() -> Self {
        Report { checked: 0, violations: Vec::new(), runtime_ms: 0 }
    }
}

pub(crate) struct Timer(Instant);

impl Timer {
    pub(crate) fn start() -> Self {
        Timer(Instant::now())
    }

    pub(crate) fn finish<V>(self, checked: usize, violations: Vec<V>) -> Report<V> {
        Report { checked, violations, runtime_ms: self.0.elapsed().as_millis() }
    }
}
