use rayon::prelude::*;

use super::coupling::{run_coupled, CouplingOptions};
use super::schedule::{TimeMode, UpdateSchedule};
use crate::error::{Error, Result};
use crate::graph::IsingInstance;
use crate::rng::stream;
use crate::scalar::Scalar;
use crate::stats::{wilson, Interval, Z95};

pub const MIN_DECAY_REPLICAS: u64 = 30;

#[derive(Debug, Clone)]
pub struct DecayCurve {
    pub times: Vec<f64>,
    /// Estimate of `max_u P(X+_t(u) != X-_t(u))`, with the Wilson interval of
    /// the maximizing vertex.
    pub max_disagreement: Vec<Interval>,
    pub argmax: Vec<usize>,
    /// Mean of `#{u : X+_t(u) != X-_t(u)}`.
    pub mean_disagreements: Vec<f64>,
    pub replicas: u64,
}

/// Continuous-time disagreement probabilities of the grand coupling at the
/// given times.
pub fn disagreement_decay<S: Scalar>(inst: &IsingInstance<S>, times: &[f64], replicas: u64, seed: u64) -> Result<DecayCurve> {
    let horizon = times.iter().copied().fold(0.0, f64::max);
    let schedule = UpdateSchedule::new(TimeMode::Continuous, horizon).with_checkpoints(times.to_vec());
    disagreement_decay_scheduled(inst, &schedule, replicas, seed)
}

/// As [`disagreement_decay`], under an arbitrary schedule; the checkpoints
/// of `schedule` are the measurement times.
pub fn disagreement_decay_scheduled<S: Scalar>(
    inst: &IsingInstance<S>,
    schedule: &UpdateSchedule,
    replicas: u64,
    seed: u64,
) -> Result<DecayCurve> {
    if replicas < MIN_DECAY_REPLICAS {
        return Err(Error::invalid(format!("disagreement decay needs at least {MIN_DECAY_REPLICAS} replicas, got {replicas}")));
    }
    schedule.validate(inst.n())?;
    let times: Vec<f64> = schedule.checkpoints.iter().copied().filter(|&t| t <= schedule.horizon).collect();
    let n = inst.n();
    let k = times.len();
    let counts = (0..replicas)
        .into_par_iter()
        .map(|r| -> Result<Vec<Vec<u64>>> {
            let mut per = vec![vec![0u64; n]; k];
            let mut rng = stream(seed, "decay", r);
            run_coupled(inst, schedule, &CouplingOptions::default(), &mut rng, |ci, plus, minus| {
                for v in 0..n {
                    per[ci][v] += u64::from(plus[v] != minus[v]);
                }
            })?;
            Ok(per)
        })
        .try_reduce(
            || vec![vec![0u64; n]; k],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    for (p, q) in x.iter_mut().zip(y) {
                        *p += q;
                    }
                }
                Ok(a)
            },
        )?;
    let mut max_disagreement = Vec::with_capacity(k);
    let mut argmax = Vec::with_capacity(k);
    let mut mean_disagreements = Vec::with_capacity(k);
    for row in &counts {
        let (arg, &best) = row.iter().enumerate().max_by_key(|&(v, c)| (c, std::cmp::Reverse(v))).unwrap_or((0, &0));
        max_disagreement.push(wilson(best, replicas, Z95));
        argmax.push(arg);
        mean_disagreements.push(row.iter().sum::<u64>() as f64 / replicas as f64);
    }
    Ok(DecayCurve { times, max_disagreement, argmax, mean_disagreements, replicas })
}

/// `ceil(5 T n)`: discrete mixing time implied by a continuous bound `T >= 1`.
pub fn discrete_from_continuous_bound(t: f64, n: usize) -> Result<u64> {
    if t.is_nan() || t < 1.0 {
        return Err(Error::invalid(format!("continuous bound must be at least 1, got {t}")));
    }
    let v = (5.0 * t * n as f64).ceil();
    if v > u64::MAX as f64 {
        return Err(Error::invalid("discrete bound overflows u64"));
    }
    Ok(v as u64)
}
