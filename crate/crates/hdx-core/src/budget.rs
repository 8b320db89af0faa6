//! Enumeration budget guard.
//!
//! Exhaustive operations (cochain enumeration, coboundary witness search,
//! brute-force expansion constants) refuse up front when the required item
//! count exceeds the budget, instead of running forever.

use crate::error::HdxError;
use crate::Result;

/// Default cap on enumerated items per operation.
pub const DEFAULT_BUDGET: u128 = 1 << 26;

/// Environment variable overriding the default budget.
pub const BUDGET_ENV: &str = "HDX_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    cap: u128,
}

impl Budget {
    pub fn new(cap: u128) -> Self {
        Budget { cap }
    }

    /// Reads `HDX_BUDGET` (decimal), falling back to [`DEFAULT_BUDGET`].
    pub fn from_env() -> Self {
        let cap = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u128>().ok())
            .unwrap_or(DEFAULT_BUDGET);
        Budget { cap }
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    /// Errors with the required count when it exceeds the cap.
    pub fn check(&self, required: u128) -> Result<()> {
        if required > self.cap {
            Err(HdxError::BudgetExceeded {
                required,
                budget: self.cap,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

/// `base^exp` saturating at `u128::MAX`, for budget checks.
pub fn checked_pow(base: u128, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}
