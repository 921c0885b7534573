//! Per-thread computation limits and the seed for randomized choices.
//!
//! Limits are installed with [`scoped`] and consulted by the Gröbner engine.
//! Worker threads do not inherit the caller's limits; parallel drivers install
//! their own scope inside each task.

use std::cell::RefCell;
use std::time::{Duration, Instant};

use crate::error::{AlgebraError, Result};

/// Resource limits for a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_seconds: Option<u64>,
    pub max_spairs: Option<u64>,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_seconds: None, max_spairs: None, seed: 0x5eed }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_seconds(mut self, secs: u64) -> Self {
        self.max_seconds = Some(secs);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

struct Active {
    budget: Budget,
    deadline: Option<Instant>,
    spairs: u64,
}

thread_local! {
    static ACTIVE: RefCell<Vec<Active>> = const { RefCell::new(Vec::new()) };
}

/// Runs `f` with `budget` installed for the current thread.
///
/// Nested scopes can only tighten the deadline of the enclosing one.
pub fn scoped<T>(budget: Budget, f: impl FnOnce() -> T) -> T {
    let deadline = budget.max_seconds.map(|s| Instant::now() + Duration::from_secs(s));
    ACTIVE.with(|a| {
        let mut a = a.borrow_mut();
        let deadline = match (deadline, a.last().and_then(|outer| outer.deadline)) {
            (Some(d), Some(o)) => Some(d.min(o)),
            (d, o) => d.or(o),
        };
        a.push(Active { budget, deadline, spairs: 0 });
    });
    struct Pop;
    impl Drop for Pop {
        fn drop(&mut self) {
            ACTIVE.with(|a| {
                a.borrow_mut().pop();
            });
        }
    }
    let _pop = Pop;
    f()
}

/// The budget in force on this thread (unlimited when none is installed).
pub fn current() -> Budget {
    ACTIVE.with(|a| a.borrow().last().map(|x| x.budget).unwrap_or_default())
}

pub fn seed() -> u64 {
    current().seed
}

/// Remaining wall-clock seconds of the innermost scope, if limited.
pub fn remaining() -> Option<Duration> {
    ACTIVE.with(|a| {
        a.borrow()
            .last()
            .and_then(|x| x.deadline)
            .map(|d| d.saturating_duration_since(Instant::now()))
    })
}

/// Checks the deadline; called from inner loops.
pub fn check() -> Result<()> {
    ACTIVE.with(|a| {
        if let Some(top) = a.borrow().last() {
            if let Some(d) = top.deadline {
                if Instant::now() >= d {
                    return Err(AlgebraError::ResourceLimit("time budget exhausted".into()));
                }
            }
        }
        Ok(())
    })
}

/// Counts one processed S-pair against the budget.
pub fn charge_spair() -> Result<()> {
    let over = ACTIVE.with(|a| {
        let mut a = a.borrow_mut();
        match a.last_mut() {
            Some(top) => {
                top.spairs += 1;
                matches!(top.budget.max_spairs, Some(m) if top.spairs > m)
            }
            None => false,
        }
    });
    if over {
        return Err(AlgebraError::ResourceLimit("S-pair budget exhausted".into()));
    }
    check()
}
