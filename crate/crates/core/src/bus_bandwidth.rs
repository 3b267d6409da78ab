//! Bus load, utilization and queuing.
//!
//! From the bus's point of view a miss is a customer whose service time is
//! the trailing edge. Utilization is arrival rate times service time, and the
//! expected wait follows an M/D/1 queue.

use serde::{Deserialize, Serialize};

use crate::cache_locality::{trailing_edge, BusSpec};
use crate::error::{Error, Result};

/// Queuing discipline used for bus wait estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum QueueModel {
    /// Poisson arrivals, deterministic service.
    #[default]
    Md1,
}

impl QueueModel {
    pub fn name(&self) -> &'static str {
        match self {
            QueueModel::Md1 => "M/D/1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrafficModel {
    threads: u32,
    accesses_per_cycle_per_thread: f64,
    miss_ratio: f64,
}

impl TrafficModel {
    pub fn new(threads: u32, accesses_per_cycle_per_thread: f64, miss_ratio: f64) -> Result<Self> {
        if threads == 0 {
            return Err(Error::config("threads", "must be >= 1"));
        }
        if !(accesses_per_cycle_per_thread > 0.0 && accesses_per_cycle_per_thread.is_finite()) {
            return Err(Error::config(
                "accesses_per_cycle_per_thread",
                format!("must be > 0, got {accesses_per_cycle_per_thread}"),
            ));
        }
        if !(0.0..=1.0).contains(&miss_ratio) {
            return Err(Error::config(
                "miss_ratio",
                format!("must be in [0, 1], got {miss_ratio}"),
            ));
        }
        Ok(Self {
            threads,
            accesses_per_cycle_per_thread,
            miss_ratio,
        })
    }

    pub fn threads(&self) -> u32 {
        self.threads
    }

    pub fn miss_ratio(&self) -> f64 {
        self.miss_ratio
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BusState {
    pub utilization: f64,
    pub service_time: f64,
    pub saturated: bool,
}

/// Misses per processor cycle.
pub fn offered_load(traffic: &TrafficModel) -> f64 {
    f64::from(traffic.threads) * traffic.accesses_per_cycle_per_thread * traffic.miss_ratio
}

/// `rho = lambda * te`. A value at or above 1 is reported with the
/// saturation flag set rather than as an error.
pub fn utilization(lambda: f64, te: f64) -> Result<BusState> {
    if !(lambda >= 0.0) || !(te >= 0.0) {
        return Err(Error::domain(format!(
            "arrival rate and service time must be >= 0, got lambda={lambda}, te={te}"
        )));
    }
    let rho = lambda * te;
    Ok(BusState {
        utilization: rho,
        service_time: te,
        saturated: rho >= 1.0,
    })
}

/// Expected M/D/1 wait in cycles: `rho * te / (2 * (1 - rho))`.
pub fn queuing_delay(rho: f64, te: f64) -> Result<f64> {
    if !(rho >= 0.0) || !(te >= 0.0) {
        return Err(Error::domain(format!(
            "utilization and service time must be >= 0, got rho={rho}, te={te}"
        )));
    }
    if rho >= 1.0 {
        return Err(Error::Saturated { rho });
    }
    Ok(rho * te / (2.0 * (1.0 - rho)))
}

/// Leading edge + queue wait + trailing edge.
pub fn miss_penalty(bus: &BusSpec, line_size: u64, wait: f64) -> Result<f64> {
    if !(wait >= 0.0) {
        return Err(Error::domain(format!("wait must be >= 0, got {wait}")));
    }
    Ok(bus.leading_edge() + wait + trailing_edge(line_size, bus) as f64)
}
