//! Collision analysis for slotted MAC in underwater acoustic networks.
//!
//! Propagation delay comparable to the packet duration couples space and
//! time: whether two packets collide at the sink depends on their sending
//! slots and on the senders' distances. This crate provides
//!
//! * [`geometry`]: coverage shapes, sink-centred areas and distance densities,
//! * [`stmodel`]: slot arithmetic, the collision predicate and the
//!   interference / collision-free / deep-interference regions,
//! * [`analytics`]: closed-form success probability and throughput, sweeps,
//! * [`montecarlo`]: a seeded two-node geometric estimator,
//! * [`simulator`]: a discrete-event slotted ALOHA simulator,
//! * [`cli`]: config parsing and the file outputs behind the `stcmac` binary.

pub mod analytics;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod montecarlo;
pub mod quadrature;
pub mod simulator;
pub mod stmodel;

pub use analytics::{analyze, AnalyticResult, WeightingMode};
pub use error::{Error, Result};
pub use geometry::{Coverage, Shape};
pub use stmodel::ScenarioConfig;
