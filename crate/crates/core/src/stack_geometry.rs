//! Physical stack arithmetic: layer-versus-footprint growth, TSV area
//! budgets, the cube height limit and interconnect density.
//!
//! Units: edge lengths and areas in mm / mm², thicknesses, pitches and TSV
//! cell areas in um / um².

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// TSV area fraction above which a stack is considered too tall for its
/// power and TSV current limits. Posited, not derived.
pub const TSV_FRACTION_LIMIT: f64 = 1.0 / std::f64::consts::E;

/// Via density reported for current TSV processes, per cm².
pub const TSV_DENSITY_PER_CM2: f64 = 100_000.0;
/// State-of-the-art microbump diameter and pitch (um).
pub const MICROBUMP_DIAMETER_UM: f64 = 25.0;
pub const MICROBUMP_PITCH_UM: f64 = 50.0;
/// Density gain of fine-pitch microbumps over standard chip I/O.
pub const MICROBUMP_IO_DENSITY_GAIN: f64 = 16.0;
/// Reported range of TSV diameters (um).
pub const TSV_DIAMETER_RANGE_UM: (f64, f64) = (1.0, 10.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StackGeometry {
    edge_mm: f64,
    layers: u32,
    thickness_um: f64,
    tsv_fraction: f64,
}

impl StackGeometry {
    pub fn new(edge_mm: f64, layers: u32, thickness_um: f64, tsv_fraction: f64) -> Result<Self> {
        if !(edge_mm > 0.0 && edge_mm.is_finite()) {
            return Err(Error::config(
                "edge_mm",
                format!("must be > 0, got {edge_mm}"),
            ));
        }
        if layers == 0 {
            return Err(Error::config("layers", "must be >= 1"));
        }
        if !(thickness_um > 0.0 && thickness_um.is_finite()) {
            return Err(Error::config(
                "thickness_um",
                format!("must be > 0, got {thickness_um}"),
            ));
        }
        if !(0.0..=1.0).contains(&tsv_fraction) {
            return Err(Error::config(
                "tsv_fraction",
                format!("must be in [0, 1], got {tsv_fraction}"),
            ));
        }
        Ok(Self {
            edge_mm,
            layers,
            thickness_um,
            tsv_fraction,
        })
    }

    pub fn edge_mm(&self) -> f64 {
        self.edge_mm
    }

    pub fn layers(&self) -> u32 {
        self.layers
    }

    pub fn thickness_um(&self) -> f64 {
        self.thickness_um
    }

    pub fn tsv_fraction(&self) -> f64 {
        self.tsv_fraction
    }

    /// Footprint of one layer, mm².
    pub fn layer_area(&self) -> f64 {
        self.edge_mm * self.edge_mm
    }

    pub fn with_layers(&self, layers: u32) -> Result<Self> {
        Self::new(self.edge_mm, layers, self.thickness_um, self.tsv_fraction)
    }

    pub fn with_edge(&self, edge_mm: f64) -> Result<Self> {
        Self::new(edge_mm, self.layers, self.thickness_um, self.tsv_fraction)
    }

    pub fn with_tsv_fraction(&self, tsv_fraction: f64) -> Result<Self> {
        Self::new(self.edge_mm, self.layers, self.thickness_um, tsv_fraction)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TsvSpec {
    diameter_um: f64,
    pitch_um: f64,
    current_limit_a: f64,
    cell_area_um2: f64,
}

impl TsvSpec {
    pub fn new(
        diameter_um: f64,
        pitch_um: f64,
        current_limit_a: f64,
        cell_area_um2: f64,
    ) -> Result<Self> {
        if !(diameter_um > 0.0 && diameter_um.is_finite()) {
            return Err(Error::config(
                "diameter_um",
                format!("must be > 0, got {diameter_um}"),
            ));
        }
        if !(pitch_um >= diameter_um && pitch_um.is_finite()) {
            return Err(Error::config(
                "pitch_um",
                format!("pitch ({pitch_um}) must be >= diameter ({diameter_um})"),
            ));
        }
        if !(current_limit_a > 0.0 && current_limit_a.is_finite()) {
            return Err(Error::config(
                "current_limit_a",
                format!("must be > 0, got {current_limit_a}"),
            ));
        }
        if !(cell_area_um2 >= diameter_um * diameter_um && cell_area_um2.is_finite()) {
            return Err(Error::config(
                "cell_area_um2",
                format!(
                    "cell area ({cell_area_um2}) must be >= diameter² ({})",
                    diameter_um * diameter_um
                ),
            ));
        }
        Ok(Self {
            diameter_um,
            pitch_um,
            current_limit_a,
            cell_area_um2,
        })
    }

    pub fn diameter_um(&self) -> f64 {
        self.diameter_um
    }

    pub fn pitch_um(&self) -> f64 {
        self.pitch_um
    }

    pub fn current_limit_a(&self) -> f64 {
        self.current_limit_a
    }

    pub fn cell_area_um2(&self) -> f64 {
        self.cell_area_um2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GrowthAdvice {
    AddLayer,
    GrowFootprint,
    Indifferent,
}

impl fmt::Display for GrowthAdvice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GrowthAdvice::AddLayer => "AddLayer",
            GrowthAdvice::GrowFootprint => "GrowFootprint",
            GrowthAdvice::Indifferent => "Indifferent",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum GrowthMode {
    /// `n < x / 2δ`, with the `n·δ²` term dropped.
    PaperApprox,
    /// Full comparison of `x²` against `n·(2δx + δ²)`.
    #[default]
    Exact,
}

/// Whether adding a layer (gaining `x²`) beats widening every layer by
/// `delta` (gaining `n·((x+δ)² − x²)`).
pub fn growth_advice(
    edge_mm: f64,
    layers: u32,
    delta_mm: f64,
    mode: GrowthMode,
) -> Result<GrowthAdvice> {
    if !(edge_mm > 0.0) || layers == 0 || !(delta_mm > 0.0) {
        return Err(Error::domain(format!(
            "growth advice needs x > 0, n >= 1, delta > 0; got x={edge_mm}, n={layers}, delta={delta_mm}"
        )));
    }
    let n = f64::from(layers);
    let (lhs, rhs) = match mode {
        GrowthMode::PaperApprox => (edge_mm / (2.0 * delta_mm), n),
        GrowthMode::Exact => (
            edge_mm * edge_mm,
            n * (2.0 * delta_mm * edge_mm + delta_mm * delta_mm),
        ),
    };
    Ok(if lhs > rhs {
        GrowthAdvice::AddLayer
    } else if lhs < rhs {
        GrowthAdvice::GrowFootprint
    } else {
        GrowthAdvice::Indifferent
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TsvBudget {
    pub fraction: f64,
    pub tsv_count: u64,
    pub feasible: bool,
}

/// Power-delivery TSV budget against the default `1/e` area limit.
pub fn tsv_area_budget(
    total_power_w: f64,
    supply_voltage_v: f64,
    tsv: &TsvSpec,
    layer_area_mm2: f64,
) -> Result<TsvBudget> {
    tsv_area_budget_with_limit(
        total_power_w,
        supply_voltage_v,
        tsv,
        layer_area_mm2,
        TSV_FRACTION_LIMIT,
    )
}

/// TSV count from worst-case DC current `P / V`; feasible while the area
/// fraction is at most `limit` (inclusive).
pub fn tsv_area_budget_with_limit(
    total_power_w: f64,
    supply_voltage_v: f64,
    tsv: &TsvSpec,
    layer_area_mm2: f64,
    limit: f64,
) -> Result<TsvBudget> {
    if !(total_power_w >= 0.0 && total_power_w.is_finite()) {
        return Err(Error::domain(format!(
            "total power must be >= 0, got {total_power_w}"
        )));
    }
    if !(supply_voltage_v > 0.0) || !(layer_area_mm2 > 0.0) {
        return Err(Error::domain("supply voltage and layer area must be > 0"));
    }
    let current = total_power_w / supply_voltage_v;
    let tsv_count = (current / tsv.current_limit_a).ceil() as u64;
    let fraction = tsv_count as f64 * tsv.cell_area_um2 / (layer_area_mm2 * 1e6);
    if fraction > 1.0 {
        return Err(Error::GeometricImpossibility { fraction });
    }
    Ok(TsvBudget {
        fraction,
        tsv_count,
        feasible: fraction <= limit,
    })
}

/// True while the stack is no taller than its edge.
pub fn cube_check(geom: &StackGeometry) -> bool {
    f64::from(geom.layers) * geom.thickness_um / 1000.0 <= geom.edge_mm
}

/// Connections per mm² on a square grid of the given pitch.
pub fn interconnect_density(pitch_um: f64) -> Result<f64> {
    if !(pitch_um > 0.0) {
        return Err(Error::domain(format!("pitch must be > 0, got {pitch_um}")));
    }
    let per_mm = 1000.0 / pitch_um;
    Ok(per_mm * per_mm)
}

/// Circuit area not taken by TSVs, summed over layers (mm²).
pub fn usable_area(geom: &StackGeometry) -> f64 {
    f64::from(geom.layers) * geom.layer_area() * (1.0 - geom.tsv_fraction)
}
