use rand::Rng;
use rand_distr::{Distribution, Exp};

use super::chain::{apply_update, ChainState};
use super::schedule::{TimeMode, UpdateSchedule};
use crate::error::Result;
use crate::graph::{IsingInstance, Spin};
use crate::rng::{stream, StreamRng};
use crate::scalar::Scalar;

/// One entry of the shared update stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Update {
    pub time: f64,
    pub vertex: usize,
    pub uniform: f64,
    /// `false` when the site was censored at that time.
    pub applied: bool,
}

#[derive(Debug, Clone)]
pub struct CouplingOptions {
    pub stop_at_coupling: bool,
    pub record_updates: bool,
    /// Seed for a third chain started from independent fair spins.
    pub random_start: Option<u64>,
}

impl Default for CouplingOptions {
    fn default() -> Self {
        CouplingOptions { stop_at_coupling: true, record_updates: false, random_start: None }
    }
}

#[derive(Debug, Clone)]
pub struct CouplingTrace {
    pub mode: TimeMode,
    pub horizon: f64,
    /// First time with `X+ = X-`; `None` if the run hit the horizon first.
    pub coupling_time: Option<f64>,
    pub checkpoints: Vec<f64>,
    /// `#{u : X+(u) != X-(u)}` at each recorded checkpoint.
    pub disagreements: Vec<usize>,
    pub updates: u64,
    pub skipped: u64,
    /// Updates after which some chain left the order `X- <= Y <= X+`.
    pub order_violations: u64,
    /// Whether the random-start chain agreed with `X+` at coupling.
    pub random_start_coupled: Option<bool>,
    pub stream: Vec<Update>,
}

impl CouplingTrace {
    pub fn censored(&self) -> bool {
        self.coupling_time.is_none()
    }
}

pub fn grand_coupling_run<S: Scalar>(inst: &IsingInstance<S>, schedule: &UpdateSchedule, seed: u64) -> Result<CouplingTrace> {
    grand_coupling_run_with(inst, schedule, &CouplingOptions::default(), &mut stream(seed, "coupling", 0))
}

/// Runs `X+` from all-plus and `X-` from all-minus on one shared stream.
pub fn grand_coupling_run_with<S: Scalar>(
    inst: &IsingInstance<S>,
    schedule: &UpdateSchedule,
    opts: &CouplingOptions,
    rng: &mut StreamRng,
) -> Result<CouplingTrace> {
    run_coupled(inst, schedule, opts, rng, |_, _, _| {})
}

/// Same as [`grand_coupling_run_with`], calling `on_checkpoint(i, X+, X-)`
/// at each checkpoint reached.
pub(crate) fn run_coupled<S: Scalar>(
    inst: &IsingInstance<S>,
    schedule: &UpdateSchedule,
    opts: &CouplingOptions,
    rng: &mut StreamRng,
    mut on_checkpoint: impl FnMut(usize, &[Spin], &[Spin]),
) -> Result<CouplingTrace> {
    let n = inst.n();
    schedule.validate(n)?;
    let masks = schedule.masks(n);
    let mut plus = ChainState::all_plus(inst).spins;
    let mut minus = ChainState::all_minus(inst).spins;
    let mut third = opts.random_start.map(|s| ChainState::random(inst, &mut stream(s, "random-start", 0)).spins);
    let mut disagree = (0..n).filter(|&v| plus[v] != minus[v]).count();
    let exp = (n > 0).then(|| Exp::new(n as f64).expect("positive rate"));

    let mut trace = CouplingTrace {
        mode: schedule.mode,
        horizon: schedule.horizon,
        coupling_time: None,
        checkpoints: Vec::new(),
        disagreements: Vec::new(),
        updates: 0,
        skipped: 0,
        order_violations: 0,
        random_start_coupled: None,
        stream: Vec::new(),
    };
    let cps = &schedule.checkpoints;
    let mut ci = 0;
    let mut time = 0.0;
    loop {
        if disagree == 0 && trace.coupling_time.is_none() {
            trace.coupling_time = Some(time);
            trace.random_start_coupled = third.as_ref().map(|y| *y == plus);
            if opts.stop_at_coupling {
                break;
            }
        }
        let next = match (schedule.mode, &exp) {
            (_, None) => f64::INFINITY,
            (TimeMode::Discrete, _) => time + 1.0,
            (TimeMode::Continuous, Some(e)) => time + e.sample(rng),
        };
        while ci < cps.len() && cps[ci] < next && cps[ci] <= schedule.horizon {
            trace.checkpoints.push(cps[ci]);
            trace.disagreements.push(disagree);
            on_checkpoint(ci, &plus, &minus);
            ci += 1;
        }
        if next > schedule.horizon {
            break;
        }
        time = next;
        let v = rng.random_range(0..n);
        let u: f64 = rng.random();
        let applied = schedule.window_at(time).is_none_or(|w| masks[w][v]);
        if applied {
            let before = plus[v] != minus[v];
            let p = apply_update(inst, &mut plus, v, u);
            let m = apply_update(inst, &mut minus, v, u);
            let after = p != m;
            if before && !after {
                disagree -= 1;
            } else if !before && after {
                disagree += 1;
            }
            let mut ordered = p.sign() >= m.sign();
            if let Some(y) = third.as_mut() {
                let s = apply_update(inst, y, v, u);
                ordered &= p.sign() >= s.sign() && s.sign() >= m.sign();
            }
            if !ordered {
                trace.order_violations += 1;
            }
        } else {
            trace.skipped += 1;
        }
        trace.updates += 1;
        if opts.record_updates {
            trace.stream.push(Update { time, vertex: v, uniform: u, applied });
        }
    }
    // remaining checkpoints see the final (possibly coupled) state
    while ci < cps.len() && cps[ci] <= schedule.horizon {
        trace.checkpoints.push(cps[ci]);
        trace.disagreements.push(disagree);
        on_checkpoint(ci, &plus, &minus);
        ci += 1;
    }
    Ok(trace)
}
