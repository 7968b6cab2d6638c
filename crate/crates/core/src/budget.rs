//! Optional time and memory limits for long computations.

use std::fmt;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_time: Option<Duration>,
    pub max_memory_bytes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn is_unlimited(&self) -> bool {
        self.max_time.is_none() && self.max_memory_bytes.is_none()
    }

    /// Starts the wall clock against which `max_time` is measured.
    pub fn start(self) -> BudgetClock {
        BudgetClock {
            budget: self,
            started: Instant::now(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetBreach {
    Time { elapsed: Duration, limit: Duration },
    Memory { used: u64, limit: u64 },
}

impl fmt::Display for BudgetBreach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetBreach::Time { elapsed, limit } => write!(
                f,
                "time budget exceeded ({:.1}s > {:.1}s)",
                elapsed.as_secs_f64(),
                limit.as_secs_f64()
            ),
            BudgetBreach::Memory { used, limit } => write!(
                f,
                "memory budget exceeded ({} MB > {} MB)",
                used >> 20,
                limit >> 20
            ),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BudgetClock {
    budget: Budget,
    started: Instant,
}

impl BudgetClock {
    pub fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }

    pub fn check(&self) -> Result<(), BudgetBreach> {
        if let Some(limit) = self.budget.max_time {
            let elapsed = self.elapsed();
            if elapsed > limit {
                return Err(BudgetBreach::Time { elapsed, limit });
            }
        }
        if let Some(limit) = self.budget.max_memory_bytes {
            if let Some(used) = peak_rss_bytes() {
                if used > limit {
                    return Err(BudgetBreach::Memory { used, limit });
                }
            }
        }
        Ok(())
    }
}

/// Peak resident set size of this process (`VmHWM`), where the platform reports it.
pub fn peak_rss_bytes() -> Option<u64> {
    proc_status_kib("VmHWM:").map(|kib| kib * 1024)
}

/// Current resident set size of this process (`VmRSS`).
pub fn current_rss_bytes() -> Option<u64> {
    proc_status_kib("VmRSS:").map(|kib| kib * 1024)
}

fn proc_status_kib(key: &str) -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    status
        .lines()
        .find_map(|line| line.strip_prefix(key))
        .and_then(|rest| rest.split_whitespace().next())
        .and_then(|v| v.parse().ok())
}
