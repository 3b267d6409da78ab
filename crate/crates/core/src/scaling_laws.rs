//! System scaling algebra.
//!
//! Replicating a `{threads, bandwidth, capacity}` system `k` times at a fixed
//! total bandwidth budget leaves each copy with `b / k` of the original
//! bandwidth. Under the miss-rate power law each copy must then cut its miss
//! rate by `k / b`, which takes `(k / b)^(1 / alpha)` times the capacity.
//! With `k = 2`, `b = 1` and the square-root law this is the factor of 8.

use serde::Serialize;

use crate::error::{Error, Result};

/// Historical yearly processor performance improvement.
pub const DEFAULT_CPU_RATE: f64 = 0.60;
/// Upper bound on yearly memory access-time improvement. The historical
/// figure is "less than" this, so gaps computed with it are lower bounds.
pub const DEFAULT_MEM_RATE: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingQuery {
    pub thread_factor: f64,
    pub bandwidth_factor: f64,
    pub alpha: f64,
}

impl ScalingQuery {
    pub fn new(thread_factor: f64, bandwidth_factor: f64, alpha: f64) -> Result<Self> {
        if !(thread_factor > 0.0 && thread_factor.is_finite()) {
            return Err(Error::domain(format!(
                "thread factor must be > 0, got {thread_factor}"
            )));
        }
        if !(bandwidth_factor > 0.0 && bandwidth_factor.is_finite()) {
            return Err(Error::domain(format!(
                "bandwidth factor must be > 0, got {bandwidth_factor}"
            )));
        }
        check_alpha(alpha)?;
        Ok(Self {
            thread_factor,
            bandwidth_factor,
            alpha,
        })
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "alpha must be in (0, 1], got {alpha}"
        )))
    }
}

/// Total cache capacity multiplier: `k * (k / b)^(1 / alpha)`.
pub fn capacity_factor(query: &ScalingQuery) -> f64 {
    let k = query.thread_factor;
    let per_copy = (k / query.bandwidth_factor).powf(1.0 / query.alpha);
    k * per_copy
}

/// Per-system capacity multiplier needed when bandwidth is scaled by `b`.
pub fn capacity_for_bandwidth(b: f64, alpha: f64) -> Result<f64> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::domain(format!(
            "bandwidth multiplier must be > 0, got {b}"
        )));
    }
    check_alpha(alpha)?;
    Ok((1.0 / b).powf(1.0 / alpha))
}

/// Ratio by which processor speed outgrows memory speed after `years`.
pub fn memory_wall_gap(years: f64, cpu_rate: f64, mem_rate: f64) -> Result<f64> {
    if !(years >= 0.0) {
        return Err(Error::domain(format!("years must be >= 0, got {years}")));
    }
    if !(cpu_rate > -1.0) || !(mem_rate > -1.0) {
        return Err(Error::domain("growth rates must be > -1"));
    }
    Ok(((1.0 + cpu_rate) / (1.0 + mem_rate)).powf(years))
}

/// Wire-limited speedup of an `n`-layer stack over one layer.
pub fn wire_performance_factor(layers: u32) -> Result<f64> {
    if layers == 0 {
        return Err(Error::domain("layer count must be >= 1"));
    }
    Ok(f64::from(layers).sqrt())
}

/// Planar wire length (mm) over vertical via length (um).
pub fn wire_length_ratio(planar_mm: f64, vertical_um: f64) -> Result<f64> {
    if !(planar_mm > 0.0) || !(vertical_um > 0.0) {
        return Err(Error::domain("wire lengths must be > 0"));
    }
    Ok(planar_mm * 1000.0 / vertical_um)
}
