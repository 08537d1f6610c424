//! Resource limits. Requests beyond them are refused with [`Error::Budget`].

use crate::error::{Error, Result};

/// Default ceiling on requested decimal digits.
pub const DEFAULT_MAX_DIGITS: u32 = 100;
/// Largest cut-off `n` an extraction may use.
pub const MAX_N: u64 = 100_000;
/// Ceiling on `digits * n` for a direct summation.
pub const MAX_WORK: u64 = 100_000_000;
/// Largest Euler-Maclaurin order used by extraction.
pub const MAX_M: u32 = 40;

/// The digit ceiling, overridable through `ASYMLOG_MAX_DIGITS`.
pub fn max_digits() -> u32 {
    std::env::var("ASYMLOG_MAX_DIGITS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIGITS)
}

pub fn check_digits(digits: u32) -> Result<()> {
    let max = max_digits();
    if digits > max {
        return Err(Error::Budget(format!(
            "{digits} digits requested, limit is {max} (set ASYMLOG_MAX_DIGITS to raise it)"
        )));
    }
    Ok(())
}

pub fn check_direct(n: u64, digits: u32) -> Result<()> {
    check_digits(digits)?;
    let work = n.saturating_mul(digits as u64);
    if work > MAX_WORK {
        return Err(Error::Budget(format!(
            "direct sum with n = {n} at {digits} digits exceeds the work limit {MAX_WORK}"
        )));
    }
    Ok(())
}
