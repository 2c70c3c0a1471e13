use std::time::{Duration, Instant};

/// Wall-clock allowance for a solver call.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    /// Default allowance per invariant call.
    pub const DEFAULT_SECONDS: u64 = 300;

    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn new(allowance: Duration) -> Self {
        Budget {
            deadline: Instant::now().checked_add(allowance),
        }
    }

    pub fn seconds(s: f64) -> Self {
        Budget::new(Duration::from_secs_f64(s.max(0.0)))
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn remaining(&self) -> Option<Duration> {
        self.deadline.map(|d| d.saturating_duration_since(Instant::now()))
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Duration::from_secs(Self::DEFAULT_SECONDS))
    }
}
