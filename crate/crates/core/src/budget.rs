use std::time::{Duration, Instant};

use crate::error::{AlgebraError, Result};

/// Wall-clock deadline plus a cap on Buchberger steps per basis computation.
#[derive(Clone, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
    step_cap: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None, step_cap: None }
    }
    pub fn with_timeout(d: Duration) -> Self {
        Budget { deadline: Some(Instant::now() + d), step_cap: None }
    }
    pub fn seconds(s: u64) -> Self {
        Budget::with_timeout(Duration::from_secs(s))
    }
    pub fn step_cap(mut self, cap: Option<u64>) -> Self {
        self.step_cap = cap;
        self
    }
    pub fn cap(&self) -> Option<u64> {
        self.step_cap
    }
    pub fn deadline(&self) -> Option<Instant> {
        self.deadline
    }
    /// A tighter budget: the earlier of this deadline and now + d.
    pub fn sub_budget(&self, d: Duration) -> Self {
        let mine = Instant::now() + d;
        let deadline = Some(self.deadline.map_or(mine, |x| x.min(mine)));
        Budget { deadline, step_cap: self.step_cap }
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(AlgebraError::Timeout("deadline reached".into())),
            _ => Ok(()),
        }
    }

    pub fn check_steps(&self, steps: u64) -> Result<()> {
        match self.step_cap {
            Some(c) if steps > c => Err(AlgebraError::Timeout(format!("step cap {c} reached"))),
            _ => self.check_time(),
        }
    }

    pub fn remaining(&self) -> Option<Duration> {
        self.deadline.map(|d| d.saturating_duration_since(Instant::now()))
    }
}
