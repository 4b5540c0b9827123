//! Recursion and work limits shared by substitution and checking.

use std::cell::Cell;

pub const DEFAULT_MAX_DEPTH: usize = 10_000;
pub const DEFAULT_MAX_STEPS: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhausted;

/// Depth and step counters. Not `Sync`; each checker owns one.
#[derive(Debug)]
pub struct Budget {
    max_depth: usize,
    max_steps: u64,
    depth: Cell<usize>,
    steps: Cell<u64>,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::new(DEFAULT_MAX_DEPTH)
    }
}

impl Budget {
    pub fn new(max_depth: usize) -> Budget {
        Budget::with_steps(max_depth, DEFAULT_MAX_STEPS)
    }

    pub fn with_steps(max_depth: usize, max_steps: u64) -> Budget {
        Budget {
            max_depth,
            max_steps,
            depth: Cell::new(0),
            steps: Cell::new(0),
        }
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    /// Enters one level of recursion; the guard leaves it on drop.
    pub fn enter(&self) -> Result<DepthGuard<'_>, Exhausted> {
        let d = self.depth.get() + 1;
        let s = self.steps.get() + 1;
        if d > self.max_depth || s > self.max_steps {
            return Err(Exhausted);
        }
        self.depth.set(d);
        self.steps.set(s);
        Ok(DepthGuard(self))
    }

    /// Clears the step counter so one budget can serve many judgements.
    pub fn reset_steps(&self) {
        self.steps.set(0);
    }
}

pub struct DepthGuard<'a>(&'a Budget);

impl Drop for DepthGuard<'_> {
    fn drop(&mut self) {
        self.0.depth.set(self.0.depth.get() - 1);
    }
}
