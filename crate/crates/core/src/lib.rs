//! Glauber dynamics for the ferromagnetic Ising model on general graphs.
//!
//! The crate is organised around a few layers:
//!
//! * [`graph`] builds graphs and [`IsingInstance`]s, random families and
//!   balls `B(v, R)`.
//! * [`exact`] enumerates the Gibbs distribution and the transition matrix of
//!   the single-site heat-bath chain: marginals, spectral gap, mixing times.
//! * [`saw`] builds Weitz's tree of self-avoiding walks and evaluates
//!   spatial-mixing influences.
//! * [`dynamics`] runs the sampler itself, the monotone grand coupling and
//!   censored schedules.
//! * [`cutwidth`] computes cut-widths and the cut-width mixing bounds.
//! * [`certify`] checks the volume / local-mixing / spatial-mixing conditions
//!   and issues certified mixing-time and gap bounds.
//!
//! Model arithmetic is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the common `f64` choice.

pub mod certify;
pub mod cutwidth;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod graph;
pub mod rng;
pub mod saw;
pub mod scalar;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{Ball, Field, Graph, IsingInstance, RootedTree, Spin};
pub use scalar::Scalar;

pub type Instance = IsingInstance<f64>;
pub type Instance32 = IsingInstance<f32>;
pub type ExactDistribution64 = exact::ExactDistribution<f64>;
pub type ExactDistribution32 = exact::ExactDistribution<f32>;
pub type SawTree64 = saw::SawTree<f64>;
pub type SawTree32 = saw::SawTree<f32>;
pub type SpatialMixingCert64 = saw::SpatialMixingCert<f64>;
