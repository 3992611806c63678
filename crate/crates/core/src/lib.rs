//! Numerics for the q-gamma function family — log Gamma_q, the q-digamma
//! and its derivatives, the real dilogarithm, and the q-Stirling asymptotic
//! expansion — together with a certification engine that checks
//! logarithmically-completely-monotonic sign patterns and a sweep harness
//! for the sharp two-sided bounds they imply.
//!
//! Everything is pure `f64` computation: values are immutable after
//! construction, functions have no global state, and grid evaluations are
//! deterministic point by point.

pub mod classical;
pub mod context;
pub mod dilog;
pub mod error;
pub mod gamma;
pub mod inequalities;
pub mod lcm;
pub mod moak;
pub mod series;
pub mod sweeps;

pub use context::QContext;
pub use error::{Error, Result};
pub use series::{sum_series, EvalConfig, SeriesResult};
