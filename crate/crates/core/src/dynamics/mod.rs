//! The heat-bath Gibbs sampler, its monotone grand coupling and censored
//! schedules.
//!
//! One update picks a uniform site `v` and a uniform `U in [0, 1)` and sets
//! `sigma(v) = +` iff `U <= P(+ | neighbors)`. Sharing `(v, U)` between chains
//! preserves the pointwise order, which is what the coupling relies on.

mod censoring;
mod chain;
mod coupling;
mod decay;
mod schedule;

pub use censoring::{
    censor_by_windows, censoring_dominance_check, censoring_dominance_exact, is_subsequence, up_sets, Activities,
    DominanceMode, DominanceReport, EXACT_FREE_CAP,
};
pub use chain::{apply_update, plus_probability, run_continuous, step_discrete, ChainState};
pub use coupling::{grand_coupling_run, grand_coupling_run_with, CouplingOptions, CouplingTrace, Update};
pub use decay::{disagreement_decay, discrete_from_continuous_bound, DecayCurve, MIN_DECAY_REPLICAS};
pub use schedule::{geometric_checkpoints, CensorWindow, TimeMode, UpdateSchedule};
