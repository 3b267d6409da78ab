//! Closed-form cache behavior.
//!
//! The miss ratio of a cache follows a power law in its capacity,
//! `m(C) = m0 * (C / c0)^(-alpha)`, anchored at a measured reference point
//! `(c0, m0)`. An exponent of one half (miss rate inversely proportional to
//! the square root of capacity) fits many workloads and is the default.
//!
//! Line transfer is described by the trailing edge: the number of bus packets
//! in a line times the processor cycles per bus clock.

use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_ALPHA: f64 = 0.5;

/// Workload miss-ratio law anchored at `(c0, m0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalityModel {
    c0: f64,
    m0: f64,
    alpha: f64,
}

impl LocalityModel {
    pub fn new(c0: f64, m0: f64, alpha: f64) -> Result<Self> {
        if !(c0 > 0.0 && c0.is_finite()) {
            return Err(Error::config("c0", format!("must be > 0, got {c0}")));
        }
        if !(m0 > 0.0 && m0 <= 1.0) {
            return Err(Error::config("m0", format!("must be in (0, 1], got {m0}")));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::config(
                "alpha",
                format!("must be in (0, 1], got {alpha}"),
            ));
        }
        Ok(Self { c0, m0, alpha })
    }

    /// Square-root law anchored at `(c0, m0)`.
    pub fn square_root(c0: f64, m0: f64) -> Result<Self> {
        Self::new(c0, m0, DEFAULT_ALPHA)
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn m0(&self) -> f64 {
        self.m0
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.c0, self.m0, alpha)
    }
}

/// Geometry of one cache level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CacheLevelSpec {
    capacity: u64,
    line_size: u64,
    associativity: u32,
}

impl CacheLevelSpec {
    pub fn new(capacity: u64, line_size: u64, associativity: u32) -> Result<Self> {
        if !capacity.is_power_of_two() {
            return Err(Error::config(
                "capacity",
                format!("must be a power of two, got {capacity}"),
            ));
        }
        if !line_size.is_power_of_two() {
            return Err(Error::config(
                "line_size",
                format!("must be a power of two, got {line_size}"),
            ));
        }
        if line_size > capacity {
            return Err(Error::config(
                "line_size",
                format!("line_size ({line_size}) exceeds capacity ({capacity})"),
            ));
        }
        if associativity == 0 {
            return Err(Error::config("associativity", "must be >= 1"));
        }
        let lines = capacity / line_size;
        if !lines.is_multiple_of(u64::from(associativity)) {
            return Err(Error::config(
                "associativity",
                format!("{associativity} ways do not divide {lines} lines into whole congruence classes"),
            ));
        }
        Ok(Self {
            capacity,
            line_size,
            associativity,
        })
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn line_size(&self) -> u64 {
        self.line_size
    }

    pub fn associativity(&self) -> u32 {
        self.associativity
    }

    pub fn congruence_classes(&self) -> u64 {
        self.capacity / (self.line_size * u64::from(self.associativity))
    }
}

/// Off-stack bus. Payload bandwidth is `width / cycles_per_bus_clock` bytes
/// per processor cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BusSpec {
    width: u32,
    cycles_per_bus_clock: u32,
    leading_edge: f64,
}

impl BusSpec {
    pub fn new(width: u32, cycles_per_bus_clock: u32, leading_edge: f64) -> Result<Self> {
        if width == 0 {
            return Err(Error::config("width", "must be > 0"));
        }
        if cycles_per_bus_clock == 0 {
            return Err(Error::config("cycles_per_bus_clock", "must be >= 1"));
        }
        if !(leading_edge >= 0.0 && leading_edge.is_finite()) {
            return Err(Error::config(
                "leading_edge",
                format!("must be >= 0, got {leading_edge}"),
            ));
        }
        Ok(Self {
            width,
            cycles_per_bus_clock,
            leading_edge,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn cycles_per_bus_clock(&self) -> u32 {
        self.cycles_per_bus_clock
    }

    pub fn leading_edge(&self) -> f64 {
        self.leading_edge
    }

    /// Payload bytes per processor cycle.
    pub fn bandwidth(&self) -> f64 {
        f64::from(self.width) / f64::from(self.cycles_per_bus_clock)
    }
}

/// Miss ratio at `capacity` bytes, clamped to 1.
pub fn miss_rate(capacity: f64, model: &LocalityModel) -> Result<f64> {
    if !(capacity > 0.0) {
        return Err(Error::domain(format!(
            "cache capacity must be > 0, got {capacity}"
        )));
    }
    let m = model.m0 * (capacity / model.c0).powf(-model.alpha);
    Ok(m.min(1.0))
}

/// Processor cycles to move one line across the bus. A partial last packet
/// still costs a full bus clock.
pub fn trailing_edge(line_size: u64, bus: &BusSpec) -> u64 {
    line_size.div_ceil(u64::from(bus.width)) * u64::from(bus.cycles_per_bus_clock)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DirectoryStats {
    pub entries: u64,
    pub congruence_classes: u64,
}

/// One directory entry per line.
pub fn directory_stats(level: &CacheLevelSpec) -> DirectoryStats {
    DirectoryStats {
        entries: level.capacity / level.line_size,
        congruence_classes: level.congruence_classes(),
    }
}

/// Factor by which x-y bus dislocation is reduced when a stacked hierarchy is
/// split by bit position within the line and by congruence class.
///
/// `line_bits` is taken verbatim; callers decide whether ECC bits count.
pub fn dislocation_factor(line_bits: u64, congruence_classes: u64) -> Result<u64> {
    if line_bits == 0 || congruence_classes == 0 {
        return Err(Error::domain(
            "line_bits and congruence_classes must both be >= 1",
        ));
    }
    line_bits
        .checked_mul(congruence_classes)
        .ok_or_else(|| Error::domain("dislocation factor overflows u64"))
}
