//! Two ways of filling an `n`-layer stack with the same components.
//!
//! Homogeneous: every layer is a copy of the planar replica floorplan, so
//! hotspots line up vertically. Functional: the cores of all `n` replicas
//! fill layer 0 next to the sink and the caches fill the layers above, each
//! spread evenly over its layer.

use serde::Serialize;

use super::{evaluate, DesignPoint, EvaluationResult, LayerAssignment};
use crate::error::{Error, Result};
use crate::thermal_stack::{LayerThermal, PowerMap};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompositionComparison {
    pub homogeneous: EvaluationResult,
    pub functional: EvaluationResult,
    /// Functional minus homogeneous.
    pub max_temp_delta: f64,
    /// Functional minus homogeneous; `None` if either index is undefined.
    pub hotspot_index_delta: Option<f64>,
}

pub fn compare_compositions(point: &DesignPoint) -> Result<CompositionComparison> {
    point.validate()?;
    let n = point.geometry.layers();
    if n < 2 {
        return Err(Error::config(
            "geometry.layers",
            format!("composition comparison needs at least 2 layers, got {n}"),
        ));
    }
    let Some(fp) = &point.floorplan else {
        return Err(Error::config(
            "floorplan",
            "composition comparison needs a replica floorplan with core and cache power",
        ));
    };
    let (rows, cols) = fp.core_map.dims();
    let levels = point.caches.len();
    let r_above: Vec<f64> = point
        .thermal
        .layers()
        .iter()
        .map(LayerThermal::r_above)
        .collect();
    let build = |maps: Vec<PowerMap>| -> Result<Vec<LayerThermal>> {
        maps.into_iter()
            .zip(&r_above)
            .map(|(m, &r)| LayerThermal::new(m, r))
            .collect()
    };

    let replica = fp.core_map.add(&fp.cache_map)?;
    let mut homogeneous = point.clone();
    homogeneous.thermal = point
        .thermal
        .with_layers(build(vec![replica; n as usize])?)?;
    homogeneous.layer_assignment = LayerAssignment::homogeneous(n, levels);

    let nf = f64::from(n);
    let core_layer = PowerMap::uniform(rows, cols, fp.core_map.total() * nf)?;
    let cache_layer = PowerMap::uniform(rows, cols, fp.cache_map.total() * nf / (nf - 1.0))?;
    let mut maps = vec![core_layer];
    maps.extend(std::iter::repeat_n(cache_layer, n as usize - 1));
    let mut functional = point.clone();
    functional.thermal = point.thermal.with_layers(build(maps)?)?;
    functional.layer_assignment = LayerAssignment::functional(n, levels);

    let homogeneous = evaluate(&homogeneous)?;
    let functional = evaluate(&functional)?;
    let hotspot_index_delta = match (functional.hotspot_index, homogeneous.hotspot_index) {
        (Some(f), Some(h)) => Some(f - h),
        _ => None,
    };
    Ok(CompositionComparison {
        max_temp_delta: functional.max_temp - homogeneous.max_temp,
        hotspot_index_delta,
        homogeneous,
        functional,
    })
}
