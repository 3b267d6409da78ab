//! JSON configuration documents.
//!
//! Units are fixed by field: bytes for cache sizes, mm and mm² for layer
//! edges and areas, um and um² for thicknesses, pitches and TSV cells, W for
//! power, K/W for thermal resistance, °C for temperature. Unknown keys are
//! rejected everywhere. `configs/SCHEMA.md` documents every field.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cache_locality::{BusSpec, CacheLevelSpec, LocalityModel, DEFAULT_ALPHA};
use crate::dse::{
    Constraints, DesignPoint, LayerAssignment, ReplicaFloorplan, SweepAxis, SweepParam, SweepSpec,
    DEFAULT_MAX_POINTS,
};
use crate::error::{Error, Result};
use crate::stack_geometry::{StackGeometry, TsvSpec, TSV_FRACTION_LIMIT};
use crate::thermal_stack::{LayerThermal, PowerMap, ThermalStack};

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub workload: WorkloadSection,
    pub cache: Vec<CacheSection>,
    pub bus: BusSection,
    pub geometry: GeometrySection,
    pub tsv: TsvSection,
    pub thermal: ThermalSection,
    pub threads: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layer_assignment: Option<LayerAssignment>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub floorplan: Option<ReplicaFloorplan>,
    #[serde(default, skip_serializing_if = "SweepSection::is_empty")]
    pub sweep: SweepSection,
    #[serde(default)]
    pub constraints: Constraints,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkloadSection {
    /// Reference capacity of the miss law, bytes.
    pub c0: f64,
    /// Miss ratio at `c0`.
    pub m0: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    pub refs_per_instr: f64,
    pub accesses_per_cycle_per_thread: f64,
    pub base_cpi: f64,
    #[serde(default)]
    pub wire_scaling: bool,
}

fn default_alpha() -> f64 {
    DEFAULT_ALPHA
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheSection {
    pub capacity: u64,
    pub line_size: u64,
    #[serde(default = "one")]
    pub associativity: u32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BusSection {
    /// Bytes per bus clock.
    pub width: u32,
    pub cycles_per_bus_clock: u32,
    /// Processor cycles to the first packet.
    #[serde(default)]
    pub leading_edge: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    pub edge_mm: f64,
    pub layers: u32,
    pub thickness_um: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TsvSection {
    pub diameter_um: f64,
    pub pitch_um: f64,
    pub current_limit_a: f64,
    pub cell_area_um2: f64,
    pub supply_voltage_v: f64,
    #[serde(default = "default_tsv_limit")]
    pub max_fraction: f64,
}

fn default_tsv_limit() -> f64 {
    TSV_FRACTION_LIMIT
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThermalSection {
    pub ambient_c: f64,
    pub r_sink: f64,
    /// Sink side first.
    pub layers: Vec<ThermalLayerSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThermalLayerSection {
    pub r_above: f64,
    pub power_map: PowerMap,
}

/// Value lists per sweepable parameter.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line_size: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub associativity: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bus_width: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycles_per_bus_clock: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leading_edge: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_mm: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accesses_per_cycle_per_thread: Option<Vec<f64>>,
}

impl SweepSection {
    fn is_empty(&self) -> bool {
        self.axes().is_empty()
    }

    fn slot(&mut self, param: SweepParam) -> &mut Option<Vec<f64>> {
        match param {
            SweepParam::Capacity => &mut self.capacity,
            SweepParam::LineSize => &mut self.line_size,
            SweepParam::Associativity => &mut self.associativity,
            SweepParam::Layers => &mut self.layers,
            SweepParam::Threads => &mut self.threads,
            SweepParam::BusWidth => &mut self.bus_width,
            SweepParam::CyclesPerBusClock => &mut self.cycles_per_bus_clock,
            SweepParam::LeadingEdge => &mut self.leading_edge,
            SweepParam::Alpha => &mut self.alpha,
            SweepParam::EdgeMm => &mut self.edge_mm,
            SweepParam::AccessesPerCyclePerThread => &mut self.accesses_per_cycle_per_thread,
        }
    }

    pub fn axes(&self) -> Vec<SweepAxis> {
        let mut copy = self.clone();
        SweepParam::ALL
            .into_iter()
            .filter_map(|param| {
                copy.slot(param)
                    .take()
                    .map(|values| SweepAxis { param, values })
            })
            .collect()
    }

    pub fn from_axes(axes: &[SweepAxis]) -> Self {
        let mut s = Self::default();
        for a in axes {
            *s.slot(a.param) = Some(a.values.clone());
        }
        s
    }
}

/// Validated contents of a configuration document.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedConfig {
    pub point: DesignPoint,
    pub sweep: SweepSpec,
    pub description: Option<String>,
}

impl ConfigDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut de = serde_json::Deserializer::from_str(text);
        let doc: ConfigDocument = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            match inner.classify() {
                serde_json::error::Category::Data => Error::Schema {
                    path,
                    reason: inner.to_string(),
                },
                _ => Error::Parse(inner.to_string()),
            }
        })?;
        de.end().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config documents always serialize")
    }

    /// Build and validate the domain objects. Every failure names the field.
    pub fn to_domain(&self) -> Result<LoadedConfig> {
        if self.version != CONFIG_VERSION {
            return Err(Error::config(
                "version",
                format!(
                    "unsupported version {}, expected {CONFIG_VERSION}",
                    self.version
                ),
            ));
        }
        let w = &self.workload;
        let locality = LocalityModel::new(w.c0, w.m0, w.alpha).map_err(|e| e.at("workload"))?;

        if self.cache.is_empty() {
            return Err(Error::config(
                "cache",
                "at least one cache level is required",
            ));
        }
        let caches = self
            .cache
            .iter()
            .enumerate()
            .map(|(i, c)| {
                CacheLevelSpec::new(c.capacity, c.line_size, c.associativity)
                    .map_err(|e| e.at(&format!("cache[{i}]")))
            })
            .collect::<Result<Vec<_>>>()?;

        let bus = BusSpec::new(
            self.bus.width,
            self.bus.cycles_per_bus_clock,
            self.bus.leading_edge,
        )
        .map_err(|e| e.at("bus"))?;

        let g = &self.geometry;
        let geometry = StackGeometry::new(g.edge_mm, g.layers, g.thickness_um, 0.0)
            .map_err(|e| e.at("geometry"))?;

        let t = &self.tsv;
        let tsv = TsvSpec::new(
            t.diameter_um,
            t.pitch_um,
            t.current_limit_a,
            t.cell_area_um2,
        )
        .map_err(|e| e.at("tsv"))?;

        let layers = self
            .thermal
            .layers
            .iter()
            .enumerate()
            .map(|(i, l)| {
                LayerThermal::new(l.power_map.clone(), l.r_above)
                    .map_err(|e| e.at(&format!("thermal.layers[{i}]")))
            })
            .collect::<Result<Vec<_>>>()?;
        let thermal = ThermalStack::new(layers, self.thermal.r_sink, self.thermal.ambient_c)
            .map_err(|e| e.at("thermal"))?;

        let layer_assignment = self
            .layer_assignment
            .clone()
            .unwrap_or_else(|| LayerAssignment::default_for(geometry.layers(), caches.len()));

        let point = DesignPoint {
            threads: self.threads,
            accesses_per_cycle_per_thread: w.accesses_per_cycle_per_thread,
            base_cpi: w.base_cpi,
            refs_per_instr: w.refs_per_instr,
            wire_scaling: w.wire_scaling,
            locality,
            caches,
            bus,
            geometry,
            tsv,
            supply_voltage_v: t.supply_voltage_v,
            tsv_fraction_limit: t.max_fraction,
            thermal,
            layer_assignment,
            floorplan: self.floorplan.clone(),
            constraints: self.constraints,
        };
        point.validate()?;

        let sweep = SweepSpec::new(point.clone(), self.sweep.axes(), DEFAULT_MAX_POINTS)
            .map_err(|e| e.at("sweep"))?;
        Ok(LoadedConfig {
            point,
            sweep,
            description: self.description.clone(),
        })
    }

    /// Document describing `point` with the axes of `sweep`.
    pub fn from_domain(
        point: &DesignPoint,
        sweep: &[SweepAxis],
        description: Option<String>,
    ) -> Self {
        let caches = point
            .caches
            .iter()
            .map(|c| CacheSection {
                capacity: c.capacity(),
                line_size: c.line_size(),
                associativity: c.associativity(),
            })
            .collect();
        ConfigDocument {
            version: CONFIG_VERSION,
            description,
            workload: WorkloadSection {
                c0: point.locality.c0(),
                m0: point.locality.m0(),
                alpha: point.locality.alpha(),
                refs_per_instr: point.refs_per_instr,
                accesses_per_cycle_per_thread: point.accesses_per_cycle_per_thread,
                base_cpi: point.base_cpi,
                wire_scaling: point.wire_scaling,
            },
            cache: caches,
            bus: BusSection {
                width: point.bus.width(),
                cycles_per_bus_clock: point.bus.cycles_per_bus_clock(),
                leading_edge: point.bus.leading_edge(),
            },
            geometry: GeometrySection {
                edge_mm: point.geometry.edge_mm(),
                layers: point.geometry.layers(),
                thickness_um: point.geometry.thickness_um(),
            },
            tsv: TsvSection {
                diameter_um: point.tsv.diameter_um(),
                pitch_um: point.tsv.pitch_um(),
                current_limit_a: point.tsv.current_limit_a(),
                cell_area_um2: point.tsv.cell_area_um2(),
                supply_voltage_v: point.supply_voltage_v,
                max_fraction: point.tsv_fraction_limit,
            },
            thermal: ThermalSection {
                ambient_c: point.thermal.ambient_c(),
                r_sink: point.thermal.r_sink(),
                layers: point
                    .thermal
                    .layers()
                    .iter()
                    .map(|l| ThermalLayerSection {
                        r_above: l.r_above(),
                        power_map: l.power_map().clone(),
                    })
                    .collect(),
            },
            threads: point.threads,
            layer_assignment: Some(point.layer_assignment.clone()),
            floorplan: point.floorplan.clone(),
            sweep: SweepSection::from_axes(sweep),
            constraints: point.constraints,
        }
    }
}

pub fn parse_config(text: &str) -> Result<LoadedConfig> {
    ConfigDocument::parse(text)?.to_domain()
}

pub fn load_config(path: &Path) -> Result<LoadedConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(path.display().to_string(), format!("cannot read: {e}")))?;
    parse_config(&text)
}
