//! Explicit step and depth allowances.
//!
//! The algorithms in this crate terminate on all inputs, but their running
//! time can exceed any primitive recursive bound, so plain recursion would
//! simply hang. A [`Budget`] makes the failure point deterministic: identical
//! inputs with identical budgets consume identical step counts and fail (or
//! succeed) identically.

/// A step/depth allowance threaded through every deep recursion.
#[derive(Debug, Clone)]
pub struct Budget {
    max_steps: u64,
    max_depth: usize,
    steps: u64,
}

impl Budget {
    /// Default step allowance for the Table-1/2/3 successor algorithms.
    pub const DEFAULT_STEPS: u64 = 100_000_000;
    /// Default depth allowance (frames on the explicit work stack).
    pub const DEFAULT_DEPTH: usize = 1_000_000;
    /// Default clause allowance for the hierarchy evaluators.
    pub const DEFAULT_HIERARCHY_STEPS: u64 = 10_000_000;

    pub fn new(max_steps: u64, max_depth: usize) -> Self {
        Budget {
            max_steps,
            max_depth,
            steps: 0,
        }
    }

    /// Budget with only a step bound (depth defaults).
    pub fn with_steps(max_steps: u64) -> Self {
        Budget::new(max_steps, Self::DEFAULT_DEPTH)
    }

    /// Consume one step. Returns `false` when the allowance is gone.
    #[inline]
    pub fn try_step(&mut self) -> bool {
        if self.steps >= self.max_steps {
            return false;
        }
        self.steps += 1;
        true
    }

    /// Consume `n` steps at once (used when one logical clause batches `n`
    /// unit applications). Returns `false` if fewer than `n` remain.
    #[inline]
    pub fn try_steps(&mut self, n: u64) -> bool {
        match self.steps.checked_add(n) {
            Some(total) if total <= self.max_steps => {
                self.steps = total;
                true
            }
            _ => false,
        }
    }

    #[inline]
    pub fn depth_ok(&self, depth: usize) -> bool {
        depth <= self.max_depth
    }

    pub fn steps_consumed(&self) -> u64 {
        self.steps
    }

    pub fn max_steps(&self) -> u64 {
        self.max_steps
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_STEPS, Self::DEFAULT_DEPTH)
    }
}
