//! File formats, report serialization, and command workflows behind the
//! `hdx` binary.

pub mod commands;
pub mod files;
pub mod report;

/// Exit codes: 0 = all applicable checks pass, 2 = at least one failure,
/// 3 = input error, 4 = budget refusal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    CheckFailed = 2,
    InputError = 3,
    BudgetRefused = 4,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Default seed, fixed and printed with every scan.
pub const DEFAULT_SEED: u64 = 1729;
