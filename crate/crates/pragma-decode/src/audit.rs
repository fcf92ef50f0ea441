//! Process-wide audit counters over every [`Distribution`](crate::core::Distribution)
//! the crate emits.
//!
//! Every construction path runs a cheap simplex check (entries nonnegative,
//! sum within 1e-9 of one) and bumps these counters. Tests and the experiment
//! harness read them back to confirm that a full run produced only valid
//! distributions.

use std::sync::atomic::{AtomicU64, Ordering};

static CHECKED: AtomicU64 = AtomicU64::new(0);
static VIOLATIONS: AtomicU64 = AtomicU64::new(0);

/// Tolerance on the mass sum; matches the Distribution invariant.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Snapshot of the audit counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditCounts {
    /// Distributions checked since the last reset.
    pub checked: u64,
    /// Distributions that failed the simplex check.
    pub violations: u64,
}

pub(crate) fn record(mass: &[f64]) {
    let mut sum = 0.0;
    let mut bad = false;
    for &m in mass {
        if m < 0.0 || !m.is_finite() {
            bad = true;
        }
        sum += m;
    }
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        bad = true;
    }
    CHECKED.fetch_add(1, Ordering::Relaxed);
    if bad {
        VIOLATIONS.fetch_add(1, Ordering::Relaxed);
    }
}

/// Current counter values.
pub fn snapshot() -> AuditCounts {
    AuditCounts {
        checked: CHECKED.load(Ordering::Relaxed),
        violations: VIOLATIONS.load(Ordering::Relaxed),
    }
}

/// Zero both counters. Intended for test setup; counters are process-global.
pub fn reset() {
    CHECKED.store(0, Ordering::Relaxed);
    VIOLATIONS.store(0, Ordering::Relaxed);
}
