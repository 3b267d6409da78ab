//! Steady-state temperatures of a die stack cooled from one side.
//!
//! Each tile column is a chain of series resistances ending in the heat
//! sink. Heat crossing the interface below layer `i` is everything dissipated
//! in layers `i..` of that column, so resistances accumulate toward the layer
//! farthest from the sink. There is no lateral spreading between columns,
//! which over-predicts hotspots.
//!
//! Resistances are given for a whole layer (K/W). A column of one tile out of
//! `G` sees `G` times that value.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-tile power (W) in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct PowerMap {
    rows: usize,
    cols: usize,
    tiles: Vec<f64>,
}

impl PowerMap {
    pub fn new(rows: usize, cols: usize, tiles: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::config("", "power map needs at least one tile"));
        }
        if tiles.len() != rows * cols {
            return Err(Error::config(
                "",
                format!("{} tiles given for a {rows}x{cols} grid", tiles.len()),
            ));
        }
        if let Some(i) = tiles.iter().position(|p| !(*p >= 0.0 && p.is_finite())) {
            return Err(Error::config(
                format!("[{}][{}]", i / cols, i % cols),
                format!("tile power must be finite and >= 0, got {}", tiles[i]),
            ));
        }
        Ok(Self { rows, cols, tiles })
    }

    pub fn uniform(rows: usize, cols: usize, total_w: f64) -> Result<Self> {
        let n = rows * cols;
        Self::new(rows, cols, vec![total_w / n as f64; n])
    }

    /// All power in one tile.
    pub fn hotspot(rows: usize, cols: usize, tile: usize, total_w: f64) -> Result<Self> {
        let mut tiles = vec![0.0; rows * cols];
        if tile >= tiles.len() {
            return Err(Error::config(
                "",
                format!("hotspot tile {tile} outside the grid"),
            ));
        }
        tiles[tile] = total_w;
        Self::new(rows, cols, tiles)
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::config(
                format!("[{i}]"),
                format!("row has {} tiles, expected {c}", rows[i].len()),
            ));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn tiles(&self) -> &[f64] {
        &self.tiles
    }

    pub fn total(&self) -> f64 {
        self.tiles.iter().sum()
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.rows,
            self.cols,
            self.tiles.iter().map(|p| p * factor).collect(),
        )
    }

    /// Tile-wise sum of two maps on the same grid.
    pub fn add(&self, other: &PowerMap) -> Result<Self> {
        if self.dims() != other.dims() {
            return Err(Error::config("", "power maps have different grids"));
        }
        Self::new(
            self.rows,
            self.cols,
            self.tiles
                .iter()
                .zip(&other.tiles)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl TryFrom<Vec<Vec<f64>>> for PowerMap {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        PowerMap::from_rows(rows)
    }
}

impl From<PowerMap> for Vec<Vec<f64>> {
    fn from(map: PowerMap) -> Self {
        map.tiles.chunks(map.cols).map(<[f64]>::to_vec).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerThermal {
    power_map: PowerMap,
    r_above: f64,
}

impl LayerThermal {
    /// `r_above` is the whole-layer resistance (K/W, BEOL included) between
    /// this layer and its neighbour on the sink side.
    pub fn new(power_map: PowerMap, r_above: f64) -> Result<Self> {
        if !(r_above > 0.0 && r_above.is_finite()) {
            return Err(Error::config(
                "r_above",
                format!("must be > 0, got {r_above}"),
            ));
        }
        Ok(Self { power_map, r_above })
    }

    pub fn power_map(&self) -> &PowerMap {
        &self.power_map
    }

    pub fn r_above(&self) -> f64 {
        self.r_above
    }

    pub fn total_power(&self) -> f64 {
        self.power_map.total()
    }
}

/// Layers ordered from the heat sink outward. Layer 0 couples to the sink
/// through `r_sink`; its own `r_above` is not on any heat path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThermalStack {
    layers: Vec<LayerThermal>,
    r_sink: f64,
    ambient_c: f64,
}

impl ThermalStack {
    pub fn new(layers: Vec<LayerThermal>, r_sink: f64, ambient_c: f64) -> Result<Self> {
        let Some(first) = layers.first() else {
            return Err(Error::config("layers", "stack needs at least one layer"));
        };
        let dims = first.power_map.dims();
        if let Some(i) = layers.iter().position(|l| l.power_map.dims() != dims) {
            let (r, c) = layers[i].power_map.dims();
            return Err(Error::config(
                format!("layers[{i}].power_map"),
                format!(
                    "grid {r}x{c} does not match layer 0 grid {}x{}",
                    dims.0, dims.1
                ),
            ));
        }
        if !(r_sink > 0.0 && r_sink.is_finite()) {
            return Err(Error::config(
                "r_sink",
                format!("must be > 0, got {r_sink}"),
            ));
        }
        if !ambient_c.is_finite() {
            return Err(Error::config("ambient_c", "must be finite"));
        }
        Ok(Self {
            layers,
            r_sink,
            ambient_c,
        })
    }

    pub fn layers(&self) -> &[LayerThermal] {
        &self.layers
    }

    pub fn r_sink(&self) -> f64 {
        self.r_sink
    }

    pub fn ambient_c(&self) -> f64 {
        self.ambient_c
    }

    pub fn grid_dims(&self) -> (usize, usize) {
        self.layers[0].power_map.dims()
    }

    fn tile_count(&self) -> usize {
        let (r, c) = self.grid_dims();
        r * c
    }

    pub fn total_power(&self) -> f64 {
        self.layers.iter().map(LayerThermal::total_power).sum()
    }

    /// Copy of the stack with new layers, keeping sink and ambient.
    pub fn with_layers(&self, layers: Vec<LayerThermal>) -> Result<Self> {
        Self::new(layers, self.r_sink, self.ambient_c)
    }

    /// Power summed down each tile column.
    pub fn column_power(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.tile_count()];
        for layer in &self.layers {
            for (s, p) in sums.iter_mut().zip(&layer.power_map.tiles) {
                *s += p;
            }
        }
        sums
    }
}

/// Per-layer, per-tile temperatures in °C.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerTemperatures {
    pub rows: usize,
    pub cols: usize,
    /// `temps[layer][tile]`, tiles row-major.
    pub temps: Vec<Vec<f64>>,
}

impl LayerTemperatures {
    pub fn layer_max(&self) -> Vec<f64> {
        self.temps
            .iter()
            .map(|l| l.iter().copied().fold(f64::NEG_INFINITY, f64::max))
            .collect()
    }
}

/// Heat entering the sink through each tile column (W).
pub fn sink_heat(stack: &ThermalStack) -> Vec<f64> {
    // accumulate from the far end so this is Q(0) of the column recursion
    let mut q = vec![0.0; stack.tile_count()];
    for layer in stack.layers.iter().rev() {
        for (acc, p) in q.iter_mut().zip(&layer.power_map.tiles) {
            *acc += p;
        }
    }
    q
}

// tiles index several per-layer vectors at once
#[allow(clippy::needless_range_loop)]
pub fn layer_temperatures(stack: &ThermalStack) -> LayerTemperatures {
    let g = stack.tile_count() as f64;
    let n = stack.layers.len();
    let (rows, cols) = stack.grid_dims();
    let mut temps = vec![vec![0.0; rows * cols]; n];

    for tile in 0..rows * cols {
        // heat crossing the interface below each layer
        let mut through = vec![0.0; n];
        let mut acc = 0.0;
        for i in (0..n).rev() {
            acc += stack.layers[i].power_map.tiles[tile];
            through[i] = acc;
        }
        let mut t = stack.ambient_c + stack.r_sink * g * through[0];
        temps[0][tile] = t;
        for i in 1..n {
            t += stack.layers[i].r_above * g * through[i];
            temps[i][tile] = t;
        }
    }

    LayerTemperatures { rows, cols, temps }
}

/// Peak over mean of column-summed power; 1 when stacked power is uniform.
pub fn hotspot_overlap_index(stack: &ThermalStack) -> Result<f64> {
    let columns = stack.column_power();
    let total: f64 = columns.iter().sum();
    if !(total > 0.0) {
        return Err(Error::UndefinedIndex);
    }
    let peak = columns.iter().copied().fold(0.0, f64::max);
    if columns.iter().all(|&c| c == peak) {
        // the summed total need not equal G * peak bit-for-bit
        return Ok(1.0);
    }
    Ok(columns.len() as f64 * (peak / total))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermalVerdict {
    pub feasible: bool,
    pub worst_layer: usize,
    /// Row-major tile index.
    pub worst_tile: usize,
    pub worst_temp: f64,
}

/// Hottest tile against `t_max` (inclusive). Ties go to the lowest layer,
/// then the first tile in row-major order.
pub fn thermal_feasible(stack: &ThermalStack, t_max: f64) -> ThermalVerdict {
    verdict(&layer_temperatures(stack), t_max)
}

pub(crate) fn verdict(temps: &LayerTemperatures, t_max: f64) -> ThermalVerdict {
    let mut worst = (0, 0, f64::NEG_INFINITY);
    for (l, layer) in temps.temps.iter().enumerate() {
        for (t, &temp) in layer.iter().enumerate() {
            if temp > worst.2 {
                worst = (l, t, temp);
            }
        }
    }
    ThermalVerdict {
        feasible: worst.2 <= t_max,
        worst_layer: worst.0,
        worst_tile: worst.1,
        worst_temp: worst.2,
    }
}

/// Total stacked power over the footprint (W/mm²).
pub fn stacked_power_density(layers: &[LayerThermal], footprint_mm2: f64) -> Result<f64> {
    if !(footprint_mm2 > 0.0) {
        return Err(Error::domain(format!(
            "footprint must be > 0, got {footprint_mm2}"
        )));
    }
    Ok(layers.iter().map(LayerThermal::total_power).sum::<f64>() / footprint_mm2)
}
