//! Analytical design-space exploration for 3D-stacked processor systems.
//!
//! The closed-form models live in their own modules and are pure functions
//! of immutable inputs:
//!
//! - [`cache_locality`]: miss-rate power law, trailing edge, directories
//! - [`bus_bandwidth`]: offered load, utilization, M/D/1 wait, miss penalty
//! - [`scaling_laws`]: thread/bandwidth/capacity fungibility, memory wall
//! - [`stack_geometry`]: layer-vs-footprint growth, TSV budgets, cube limit
//! - [`thermal_stack`]: series-resistance column temperatures, hotspots
//!
//! [`dse`] composes them into a design-point evaluator with sweeps, Pareto
//! filtering and advisory queries; [`config`], [`report`] and [`cli`] are the
//! file and command-line surface.

// `!(x > 0.0)` is how validation rejects NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bus_bandwidth;
pub mod cache_locality;
pub mod cli;
pub mod config;
pub mod dse;
pub mod error;
pub mod report;
pub mod scaling_laws;
pub mod stack_geometry;
pub mod thermal_stack;

pub use error::{Error, Result};
