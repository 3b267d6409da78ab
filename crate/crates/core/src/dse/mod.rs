//! Design-point evaluation and exploration.
//!
//! A [`DesignPoint`] is evaluated by chaining the closed-form models:
//! last-level miss ratio, offered bus load, utilization, M/D/1 wait, miss
//! penalty, and finally `CPI = base_cpi + refs_per_instr * miss_ratio *
//! penalty`. Throughput is `threads / CPI` at a fixed clock. Geometry and
//! thermal checks run alongside and only set flags.

mod advise;
mod compose;
mod pareto;
mod sweep;

pub use advise::{advise, Advice, Question};
pub use compose::{compare_compositions, CompositionComparison};
pub use pareto::{pareto, Direction, Metric, Objective};
pub use sweep::{sweep, SweepAxis, SweepParam, SweepRow, SweepSpec, DEFAULT_MAX_POINTS};

use serde::{Deserialize, Serialize};

use crate::bus_bandwidth::{self, QueueModel, TrafficModel};
use crate::cache_locality::{self, BusSpec, CacheLevelSpec, LocalityModel};
use crate::error::{Error, Result};
use crate::scaling_laws;
use crate::stack_geometry::{self, StackGeometry, TsvSpec};
use crate::thermal_stack::{self, PowerMap, ThermalStack};

/// Which layers hold the cores and each cache level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerAssignment {
    pub cores: Vec<u32>,
    /// `caches[level]` lists the layers holding that level.
    pub caches: Vec<Vec<u32>>,
}

impl LayerAssignment {
    /// Cores next to the sink, every cache level on the top layer.
    pub fn default_for(layers: u32, cache_levels: usize) -> Self {
        Self {
            cores: vec![0],
            caches: vec![vec![layers - 1]; cache_levels],
        }
    }

    /// Every layer holds a full replica of the system.
    pub fn homogeneous(layers: u32, cache_levels: usize) -> Self {
        let all: Vec<u32> = (0..layers).collect();
        Self {
            cores: all.clone(),
            caches: vec![all; cache_levels],
        }
    }

    /// Cores on layer 0, caches on every other layer.
    pub fn functional(layers: u32, cache_levels: usize) -> Self {
        Self {
            cores: vec![0],
            caches: vec![(1..layers).collect(); cache_levels],
        }
    }

    fn validate(&self, layers: u32, cache_levels: usize) -> Result<()> {
        if self.cores.is_empty() {
            return Err(Error::config("cores", "must name at least one layer"));
        }
        if self.caches.len() != cache_levels {
            return Err(Error::config(
                "caches",
                format!(
                    "{} entries for {cache_levels} cache levels",
                    self.caches.len()
                ),
            ));
        }
        let check = |path: String, list: &[u32]| -> Result<()> {
            if list.is_empty() {
                return Err(Error::config(path, "must name at least one layer"));
            }
            match list.iter().position(|&l| l >= layers) {
                Some(i) => Err(Error::config(
                    format!("{path}[{i}]"),
                    format!("layer {} out of range for {layers} layers", list[i]),
                )),
                None => Ok(()),
            }
        };
        check("cores".into(), &self.cores)?;
        for (i, c) in self.caches.iter().enumerate() {
            check(format!("caches[{i}]"), c)?;
        }
        Ok(())
    }

    /// Drop indices at or above `layers`, falling back to the default
    /// placement for components left without a layer.
    pub(crate) fn clamp_to(&self, layers: u32) -> Self {
        let keep = |v: &[u32]| {
            v.iter()
                .copied()
                .filter(|&l| l < layers)
                .collect::<Vec<_>>()
        };
        let mut cores = keep(&self.cores);
        if cores.is_empty() {
            cores.push(0);
        }
        let caches = self
            .caches
            .iter()
            .map(|c| {
                let kept = keep(c);
                if kept.is_empty() {
                    vec![layers - 1]
                } else {
                    kept
                }
            })
            .collect();
        Self { cores, caches }
    }
}

/// Power floorplan of one planar system replica: its cores and its caches,
/// on the thermal grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReplicaFloorplan {
    pub core_map: PowerMap,
    pub cache_map: PowerMap,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constraints {
    /// °C
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_max: Option<f64>,
    /// Footprint area limit, mm².
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub area_max: Option<f64>,
}

impl Constraints {
    fn validate(&self) -> Result<()> {
        if let Some(r) = self.rho_max {
            if !(r > 0.0 && r <= 1.0) {
                return Err(Error::config(
                    "rho_max",
                    format!("must be in (0, 1], got {r}"),
                ));
            }
        }
        if let Some(a) = self.area_max {
            if !(a > 0.0) {
                return Err(Error::config("area_max", format!("must be > 0, got {a}")));
            }
        }
        if let Some(t) = self.t_max {
            if !t.is_finite() {
                return Err(Error::config("t_max", "must be finite"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignPoint {
    pub threads: u32,
    pub accesses_per_cycle_per_thread: f64,
    pub base_cpi: f64,
    pub refs_per_instr: f64,
    /// Divide base CPI by the wire-limited speedup `sqrt(layers)`. A proxy
    /// for layouts conceived in 3D, not a closed-form result.
    pub wire_scaling: bool,
    /// Miss law of the last on-stack cache level.
    pub locality: LocalityModel,
    /// Innermost first; only the last level drives off-stack traffic.
    pub caches: Vec<CacheLevelSpec>,
    pub bus: BusSpec,
    pub geometry: StackGeometry,
    pub tsv: TsvSpec,
    pub supply_voltage_v: f64,
    pub tsv_fraction_limit: f64,
    pub thermal: ThermalStack,
    pub layer_assignment: LayerAssignment,
    pub floorplan: Option<ReplicaFloorplan>,
    pub constraints: Constraints,
}

impl DesignPoint {
    pub fn validate(&self) -> Result<()> {
        if self.threads == 0 {
            return Err(Error::config("threads", "must be >= 1"));
        }
        positive(
            "workload.accesses_per_cycle_per_thread",
            self.accesses_per_cycle_per_thread,
        )?;
        positive("workload.base_cpi", self.base_cpi)?;
        if !(self.refs_per_instr >= 0.0 && self.refs_per_instr.is_finite()) {
            return Err(Error::config(
                "workload.refs_per_instr",
                format!("must be >= 0, got {}", self.refs_per_instr),
            ));
        }
        if self.caches.is_empty() {
            return Err(Error::config(
                "cache",
                "at least one cache level is required",
            ));
        }
        positive("tsv.supply_voltage_v", self.supply_voltage_v)?;
        if !(self.tsv_fraction_limit > 0.0 && self.tsv_fraction_limit <= 1.0) {
            return Err(Error::config(
                "tsv.max_fraction",
                format!("must be in (0, 1], got {}", self.tsv_fraction_limit),
            ));
        }
        let n = self.geometry.layers();
        if self.thermal.layers().len() != n as usize {
            return Err(Error::config(
                "thermal.layers",
                format!(
                    "{} thermal layers for a {n}-layer stack",
                    self.thermal.layers().len()
                ),
            ));
        }
        self.layer_assignment
            .validate(n, self.caches.len())
            .map_err(|e| e.at("layer_assignment"))?;
        if let Some(fp) = &self.floorplan {
            let dims = self.thermal.grid_dims();
            for (name, map) in [("core_map", &fp.core_map), ("cache_map", &fp.cache_map)] {
                if map.dims() != dims {
                    return Err(Error::config(
                        format!("floorplan.{name}"),
                        format!(
                            "grid {}x{} does not match the thermal grid {}x{}",
                            map.rows(),
                            map.cols(),
                            dims.0,
                            dims.1
                        ),
                    ));
                }
            }
        }
        self.constraints.validate().map_err(|e| e.at("constraints"))
    }

    pub fn last_level(&self) -> &CacheLevelSpec {
        self.caches
            .last()
            .expect("validated: at least one cache level")
    }
}

fn positive(path: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(path, format!("must be > 0, got {v}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Flags {
    pub bus_saturated: bool,
    pub thermal_infeasible: bool,
    pub cube_violated: bool,
    pub tsv_infeasible: bool,
    pub rho_over_limit: bool,
    pub area_over_limit: bool,
}

impl Flags {
    pub fn any(&self) -> bool {
        self.bus_saturated
            || self.thermal_infeasible
            || self.cube_violated
            || self.tsv_infeasible
            || self.rho_over_limit
            || self.area_over_limit
    }

    /// Compact rendering: one letter per raised flag, `ok` when clear.
    pub fn symbols(&self) -> String {
        let s: String = [
            (self.bus_saturated, 'S'),
            (self.thermal_infeasible, 'T'),
            (self.cube_violated, 'C'),
            (self.tsv_infeasible, 'V'),
            (self.rho_over_limit, 'R'),
            (self.area_over_limit, 'A'),
        ]
        .iter()
        .filter(|(on, _)| *on)
        .map(|(_, c)| *c)
        .collect();
        if s.is_empty() {
            "ok".to_string()
        } else {
            s
        }
    }
}

/// Outcome of one design point. Fields that depend on a steady-state queue
/// are `None` when the bus is saturated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationResult {
    pub cpi: Option<f64>,
    pub throughput: Option<f64>,
    pub miss_ratio: f64,
    pub trailing_edge: f64,
    pub rho: f64,
    pub queue_model: QueueModel,
    pub wait: Option<f64>,
    pub miss_penalty: Option<f64>,
    pub max_temp: f64,
    pub layer_max_temp: Vec<f64>,
    pub hotspot_index: Option<f64>,
    pub total_power: f64,
    pub tsv_count: u64,
    pub tsv_fraction: f64,
    pub usable_area: f64,
    pub flags: Flags,
}

pub fn evaluate(point: &DesignPoint) -> Result<EvaluationResult> {
    point.validate()?;
    let llc = point.last_level();

    let miss_ratio = cache_locality::miss_rate(llc.capacity() as f64, &point.locality)?;
    let te = cache_locality::trailing_edge(llc.line_size(), &point.bus) as f64;
    let traffic = TrafficModel::new(
        point.threads,
        point.accesses_per_cycle_per_thread,
        miss_ratio,
    )?;
    let lambda = bus_bandwidth::offered_load(&traffic);
    let bus = bus_bandwidth::utilization(lambda, te)?;

    let base_cpi = if point.wire_scaling {
        point.base_cpi / scaling_laws::wire_performance_factor(point.geometry.layers())?
    } else {
        point.base_cpi
    };

    let (wait, penalty, cpi, throughput) = if bus.saturated {
        (None, None, None, None)
    } else {
        let wait = bus_bandwidth::queuing_delay(bus.utilization, te)?;
        let penalty = bus_bandwidth::miss_penalty(&point.bus, llc.line_size(), wait)?;
        let cpi = base_cpi + point.refs_per_instr * miss_ratio * penalty;
        (
            Some(wait),
            Some(penalty),
            Some(cpi),
            Some(f64::from(point.threads) / cpi),
        )
    };

    let temps = thermal_stack::layer_temperatures(&point.thermal);
    let layer_max_temp = temps.layer_max();
    let max_temp = layer_max_temp
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let hotspot_index = thermal_stack::hotspot_overlap_index(&point.thermal).ok();
    let total_power = point.thermal.total_power();

    let (tsv_count, tsv_fraction, tsv_ok) = match stack_geometry::tsv_area_budget_with_limit(
        total_power,
        point.supply_voltage_v,
        &point.tsv,
        point.geometry.layer_area(),
        point.tsv_fraction_limit,
    ) {
        Ok(b) => (b.tsv_count, b.fraction, b.feasible),
        Err(Error::GeometricImpossibility { fraction }) => {
            let count =
                (total_power / point.supply_voltage_v / point.tsv.current_limit_a()).ceil() as u64;
            (count, fraction, false)
        }
        Err(e) => return Err(e),
    };
    let usable_area =
        stack_geometry::usable_area(&point.geometry.with_tsv_fraction(tsv_fraction.min(1.0))?);

    let c = &point.constraints;
    let flags = Flags {
        bus_saturated: bus.saturated,
        thermal_infeasible: c.t_max.is_some_and(|t| max_temp > t),
        cube_violated: !stack_geometry::cube_check(&point.geometry),
        tsv_infeasible: !tsv_ok,
        rho_over_limit: c.rho_max.is_some_and(|r| bus.utilization > r),
        area_over_limit: c.area_max.is_some_and(|a| point.geometry.layer_area() > a),
    };

    Ok(EvaluationResult {
        cpi,
        throughput,
        miss_ratio,
        trailing_edge: te,
        rho: bus.utilization,
        queue_model: QueueModel::Md1,
        wait,
        miss_penalty: penalty,
        max_temp,
        layer_max_temp,
        hotspot_index,
        total_power,
        tsv_count,
        tsv_fraction,
        usable_area,
        flags,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::thermal_stack::LayerThermal;

    /// Two-layer 10 mm stack, 1 MiB last level, 16 B bus at 4 cycles/clock.
    pub fn point() -> DesignPoint {
        let layer = |p| LayerThermal::new(PowerMap::uniform(1, 1, p).unwrap(), 0.1).unwrap();
        DesignPoint {
            threads: 4,
            accesses_per_cycle_per_thread: 0.25,
            base_cpi: 1.0,
            refs_per_instr: 0.3,
            wire_scaling: false,
            locality: LocalityModel::square_root(1048576.0, 0.01).unwrap(),
            caches: vec![
                CacheLevelSpec::new(32768, 64, 8).unwrap(),
                CacheLevelSpec::new(1 << 20, 128, 8).unwrap(),
            ],
            bus: BusSpec::new(16, 4, 100.0).unwrap(),
            geometry: StackGeometry::new(10.0, 2, 50.0, 0.0).unwrap(),
            tsv: TsvSpec::new(5.0, 10.0, 0.1, 100.0).unwrap(),
            supply_voltage_v: 1.0,
            tsv_fraction_limit: stack_geometry::TSV_FRACTION_LIMIT,
            thermal: ThermalStack::new(vec![layer(50.0), layer(50.0)], 0.2, 40.0).unwrap(),
            layer_assignment: LayerAssignment::default_for(2, 2),
            floorplan: None,
            constraints: Constraints::default(),
        }
    }
}
