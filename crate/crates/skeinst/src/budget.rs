//! Step budget for rewriting loops.

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

pub const DEFAULT_BUDGET: u64 = 1_000_000;
pub const BUDGET_ENV: &str = "SKEINST_BUDGET";

/// Raised when a rewriting loop runs out of steps. `trace` is the chain of
/// monomials under reduction (outermost first) with their order position.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("rewrite budget of {limit} steps exceeded at {term}; order trace: [{}]", trace.join(" > "))]
pub struct BudgetExceeded {
    pub limit: u64,
    pub term: String,
    pub trace: Vec<String>,
}

#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    /// Default budget, overridable through the environment.
    pub fn from_env() -> Self {
        let limit = std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET);
        Self::new(limit)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn step(&self, term: impl FnOnce() -> String, trace: impl FnOnce() -> Vec<String>) -> Result<(), BudgetExceeded> {
        let n = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.limit {
            return Err(BudgetExceeded { limit: self.limit, term: term(), trace: trace() });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhausts() {
        let b = Budget::new(2);
        assert!(b.step(|| "a".into(), Vec::new).is_ok());
        assert!(b.step(|| "a".into(), Vec::new).is_ok());
        let e = b.step(|| "x".into(), || vec!["t t1".into()]).unwrap_err();
        assert_eq!(e.term, "x");
        assert!(e.to_string().contains("t t1"));
    }
}
