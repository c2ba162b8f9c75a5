use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeMode {
    /// Time counts updates.
    Discrete,
    /// Every site carries a rate-one clock.
    Continuous,
}

/// From `start` until the next window's start, only sites in `allowed` are
/// updated; updates elsewhere are skipped (their randomness is still drawn).
#[derive(Debug, Clone, PartialEq)]
pub struct CensorWindow {
    pub start: f64,
    pub allowed: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UpdateSchedule {
    pub mode: TimeMode,
    pub horizon: f64,
    /// Time-ordered; before the first window every site is updated.
    pub windows: Vec<CensorWindow>,
    /// Times at which disagreement counts are recorded, ascending.
    pub checkpoints: Vec<f64>,
}

impl UpdateSchedule {
    pub fn new(mode: TimeMode, horizon: f64) -> Self {
        UpdateSchedule { mode, horizon, windows: Vec::new(), checkpoints: Vec::new() }
    }

    pub fn with_checkpoints(mut self, checkpoints: Vec<f64>) -> Self {
        self.checkpoints = checkpoints;
        self
    }

    pub fn with_window(mut self, start: f64, mut allowed: Vec<usize>) -> Self {
        allowed.sort_unstable();
        allowed.dedup();
        self.windows.push(CensorWindow { start, allowed });
        self
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.horizon.is_nan() || self.horizon < 0.0 {
            return Err(Error::invalid("schedule horizon must be non-negative"));
        }
        for pair in self.windows.windows(2) {
            if pair[1].start <= pair[0].start {
                return Err(Error::invalid("censor windows must have increasing start times"));
            }
        }
        for w in &self.windows {
            if let Some(&v) = w.allowed.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        if self.checkpoints.windows(2).any(|p| p[1] < p[0]) {
            return Err(Error::invalid("checkpoints must be ascending"));
        }
        Ok(())
    }

    /// Per-window membership masks, aligned with `windows`.
    pub(crate) fn masks(&self, n: usize) -> Vec<Vec<bool>> {
        self.windows
            .iter()
            .map(|w| {
                let mut m = vec![false; n];
                for &v in &w.allowed {
                    m[v] = true;
                }
                m
            })
            .collect()
    }

    /// Index of the window active at time `t`, if any.
    pub(crate) fn window_at(&self, t: f64) -> Option<usize> {
        self.windows.partition_point(|w| w.start <= t).checked_sub(1)
    }
}

/// `first, first*ratio, ...` up to and including the last value `<= last`.
pub fn geometric_checkpoints(first: f64, last: f64, ratio: f64) -> Vec<f64> {
    assert!(first > 0.0 && ratio > 1.0, "geometric grid needs first > 0 and ratio > 1");
    let mut out = Vec::new();
    let mut t = first;
    while t <= last {
        out.push(t);
        t *= ratio;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_lookup() {
        let s = UpdateSchedule::new(TimeMode::Continuous, 10.0).with_window(1.0, vec![0]).with_window(4.0, vec![1, 0]);
        assert!(s.validate(2).is_ok());
        assert_eq!(s.window_at(0.5), None);
        assert_eq!(s.window_at(1.0), Some(0));
        assert_eq!(s.window_at(7.0), Some(1));
        assert_eq!(s.windows[1].allowed, vec![0, 1]);
    }

    #[test]
    fn rejects_bad_windows() {
        let s = UpdateSchedule::new(TimeMode::Discrete, 5.0).with_window(2.0, vec![0]).with_window(1.0, vec![0]);
        assert!(s.validate(1).is_err());
        let s = UpdateSchedule::new(TimeMode::Discrete, 5.0).with_window(0.0, vec![3]);
        assert!(s.validate(2).is_err());
    }

    #[test]
    fn geometric_grid() {
        assert_eq!(geometric_checkpoints(1.0, 10.0, 2.0), vec![1.0, 2.0, 4.0, 8.0]);
    }
}
