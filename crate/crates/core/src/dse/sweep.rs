use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{evaluate, DesignPoint, EvaluationResult};
use crate::cache_locality::{BusSpec, CacheLevelSpec};
use crate::error::{Error, Result};
use crate::thermal_stack::LayerThermal;

pub const DEFAULT_MAX_POINTS: usize = 100_000;

/// Sweepable parameters. Declaration order is the enumeration order: the
/// first present parameter varies slowest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    /// Last-level capacity, bytes.
    Capacity,
    /// Last-level line size, bytes.
    LineSize,
    Associativity,
    Layers,
    Threads,
    BusWidth,
    CyclesPerBusClock,
    LeadingEdge,
    Alpha,
    EdgeMm,
    AccessesPerCyclePerThread,
}

impl SweepParam {
    pub const ALL: [SweepParam; 11] = [
        SweepParam::Capacity,
        SweepParam::LineSize,
        SweepParam::Associativity,
        SweepParam::Layers,
        SweepParam::Threads,
        SweepParam::BusWidth,
        SweepParam::CyclesPerBusClock,
        SweepParam::LeadingEdge,
        SweepParam::Alpha,
        SweepParam::EdgeMm,
        SweepParam::AccessesPerCyclePerThread,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::Capacity => "capacity",
            SweepParam::LineSize => "line_size",
            SweepParam::Associativity => "associativity",
            SweepParam::Layers => "layers",
            SweepParam::Threads => "threads",
            SweepParam::BusWidth => "bus_width",
            SweepParam::CyclesPerBusClock => "cycles_per_bus_clock",
            SweepParam::LeadingEdge => "leading_edge",
            SweepParam::Alpha => "alpha",
            SweepParam::EdgeMm => "edge_mm",
            SweepParam::AccessesPerCyclePerThread => "accesses_per_cycle_per_thread",
        }
    }

    fn is_integral(&self) -> bool {
        matches!(
            self,
            SweepParam::Capacity
                | SweepParam::LineSize
                | SweepParam::Associativity
                | SweepParam::Layers
                | SweepParam::Threads
                | SweepParam::BusWidth
                | SweepParam::CyclesPerBusClock
        )
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepParam::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::config(s, "unknown sweep parameter"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    base: DesignPoint,
    axes: Vec<SweepAxis>,
    max_points: usize,
}

impl SweepSpec {
    pub fn new(base: DesignPoint, mut axes: Vec<SweepAxis>, max_points: usize) -> Result<Self> {
        axes.sort_by_key(|a| a.param);
        for pair in axes.windows(2) {
            if pair[0].param == pair[1].param {
                return Err(Error::config(pair[0].param.name(), "parameter swept twice"));
            }
        }
        for axis in &axes {
            if axis.values.is_empty() {
                return Err(Error::config(axis.param.name(), "value list is empty"));
            }
            for (i, v) in axis.values.iter().enumerate() {
                let ok =
                    v.is_finite() && (!axis.param.is_integral() || (v.fract() == 0.0 && *v >= 0.0));
                if !ok {
                    return Err(Error::config(
                        format!("{}[{i}]", axis.param),
                        format!("invalid value {v}"),
                    ));
                }
            }
        }
        Ok(Self {
            base,
            axes,
            max_points,
        })
    }

    pub fn base(&self) -> &DesignPoint {
        &self.base
    }

    pub fn axes(&self) -> &[SweepAxis] {
        &self.axes
    }

    pub fn max_points(&self) -> usize {
        self.max_points
    }

    pub fn with_max_points(mut self, max_points: usize) -> Self {
        self.max_points = max_points;
        self
    }

    /// Size of the cross product, `None` on overflow.
    pub fn point_count(&self) -> Option<usize> {
        self.axes
            .iter()
            .try_fold(1usize, |acc, a| acc.checked_mul(a.values.len()))
    }

    /// Parameter assignment of enumeration index `index`.
    pub fn assignment(&self, mut index: usize) -> Vec<(SweepParam, f64)> {
        let mut out = vec![(SweepParam::Capacity, 0.0); self.axes.len()];
        for (slot, axis) in out.iter_mut().zip(&self.axes).rev() {
            let n = axis.values.len();
            *slot = (axis.param, axis.values[index % n]);
            index /= n;
        }
        out
    }

    pub fn point_at(&self, index: usize) -> Result<DesignPoint> {
        apply(&self.base, &self.assignment(index)).map_err(|e| e.at(&format!("sweep[{index}]")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub params: Vec<(SweepParam, f64)>,
    pub point: DesignPoint,
    pub result: EvaluationResult,
}

/// Evaluate the full cross product on `jobs` workers. Output is in
/// enumeration order whatever the worker count.
pub fn sweep(spec: &SweepSpec, jobs: usize) -> Result<Vec<SweepRow>> {
    let count = match spec.point_count() {
        Some(c) if c <= spec.max_points => c,
        other => {
            return Err(Error::SweepTooLarge {
                count: other.unwrap_or(usize::MAX),
                cap: spec.max_points,
            })
        }
    };
    let run = |index: usize| -> Result<SweepRow> {
        let point = spec.point_at(index)?;
        let result = evaluate(&point).map_err(|e| e.at(&format!("sweep[{index}]")))?;
        Ok(SweepRow {
            index,
            params: spec.assignment(index),
            point,
            result,
        })
    };
    if jobs <= 1 {
        return (0..count).map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    pool.install(|| (0..count).into_par_iter().map(run).collect())
}

/// Apply a full parameter assignment to a copy of `base`.
fn apply(base: &DesignPoint, assignment: &[(SweepParam, f64)]) -> Result<DesignPoint> {
    let mut p = base.clone();
    let llc = *base.last_level();
    let (mut capacity, mut line, mut ways) = (llc.capacity(), llc.line_size(), llc.associativity());
    let (mut width, mut cycles, mut leading) = (
        base.bus.width(),
        base.bus.cycles_per_bus_clock(),
        base.bus.leading_edge(),
    );

    for &(param, v) in assignment {
        let path = param.name();
        match param {
            SweepParam::Capacity => capacity = v as u64,
            SweepParam::LineSize => line = v as u64,
            SweepParam::Associativity => ways = to_u32(path, v)?,
            SweepParam::Layers => {
                let n = to_u32(path, v)?;
                p.geometry = p.geometry.with_layers(n).map_err(|e| e.at(path))?;
                p.thermal = resize_thermal(&p, n)?;
                p.layer_assignment = p.layer_assignment.clamp_to(n);
            }
            SweepParam::Threads => p.threads = to_u32(path, v)?,
            SweepParam::BusWidth => width = to_u32(path, v)?,
            SweepParam::CyclesPerBusClock => cycles = to_u32(path, v)?,
            SweepParam::LeadingEdge => leading = v,
            SweepParam::Alpha => p.locality = p.locality.with_alpha(v).map_err(|e| e.at(path))?,
            SweepParam::EdgeMm => p.geometry = p.geometry.with_edge(v).map_err(|e| e.at(path))?,
            SweepParam::AccessesPerCyclePerThread => p.accesses_per_cycle_per_thread = v,
        }
    }

    let last = p.caches.len() - 1;
    p.caches[last] = CacheLevelSpec::new(capacity, line, ways).map_err(|e| e.at("cache"))?;
    p.bus = BusSpec::new(width, cycles, leading).map_err(|e| e.at("bus"))?;
    Ok(p)
}

fn to_u32(path: &str, v: f64) -> Result<u32> {
    if v >= 1.0 && v <= f64::from(u32::MAX) {
        Ok(v as u32)
    } else {
        Err(Error::config(
            path,
            format!("must be a positive integer, got {v}"),
        ))
    }
}

/// Grow by repeating the outermost layer, or drop layers from the top.
fn resize_thermal(p: &DesignPoint, n: u32) -> Result<crate::thermal_stack::ThermalStack> {
    let mut layers: Vec<LayerThermal> = p.thermal.layers().to_vec();
    let top = layers
        .last()
        .cloned()
        .expect("stack has at least one layer");
    layers.resize(n as usize, top);
    p.thermal.with_layers(layers)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::point;
    use super::*;

    fn axis(param: SweepParam, values: &[f64]) -> SweepAxis {
        SweepAxis {
            param,
            values: values.to_vec(),
        }
    }

    #[test]
    fn single_values_reproduce_base() {
        let base = point();
        let spec = SweepSpec::new(
            base.clone(),
            vec![
                axis(SweepParam::Threads, &[4.0]),
                axis(SweepParam::Capacity, &[1048576.0]),
            ],
            10,
        )
        .unwrap();
        let rows = sweep(&spec, 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].point, base);
        assert_eq!(rows[0].result, evaluate(&base).unwrap());
    }

    #[test]
    fn no_axes_is_one_point() {
        let spec = SweepSpec::new(point(), vec![], 10).unwrap();
        assert_eq!(sweep(&spec, 1).unwrap().len(), 1);
    }

    #[test]
    fn lexicographic_order() {
        // given out of canonical order on purpose
        let spec = SweepSpec::new(
            point(),
            vec![
                axis(SweepParam::Threads, &[1.0, 2.0]),
                axis(SweepParam::Capacity, &[262144.0, 524288.0, 1048576.0]),
            ],
            10,
        )
        .unwrap();
        let rows = sweep(&spec, 1).unwrap();
        let seen: Vec<(f64, f64)> = rows
            .iter()
            .map(|r| (r.params[0].1, r.params[1].1))
            .collect();
        assert_eq!(
            seen,
            vec![
                (262144.0, 1.0),
                (262144.0, 2.0),
                (524288.0, 1.0),
                (524288.0, 2.0),
                (1048576.0, 1.0),
                (1048576.0, 2.0),
            ]
        );
        assert!(rows.iter().enumerate().all(|(i, r)| r.index == i));
        assert_eq!(rows[3].point.threads, 2);
        assert_eq!(rows[3].point.last_level().capacity(), 524288);
    }

    #[test]
    fn quadrupling_capacity_halves_miss_ratio() {
        let spec = SweepSpec::new(
            point(),
            vec![axis(SweepParam::Capacity, &[1048576.0, 4194304.0])],
            10,
        )
        .unwrap();
        let rows = sweep(&spec, 1).unwrap();
        assert_eq!(rows[1].result.miss_ratio, rows[0].result.miss_ratio / 2.0);
    }

    #[test]
    fn cap_refuses_with_count() {
        let spec = SweepSpec::new(
            point(),
            vec![
                axis(SweepParam::Threads, &[1.0, 2.0, 3.0]),
                axis(SweepParam::BusWidth, &[8.0, 16.0]),
            ],
            5,
        )
        .unwrap();
        assert_eq!(spec.point_count(), Some(6));
        assert_eq!(
            sweep(&spec, 1),
            Err(Error::SweepTooLarge { count: 6, cap: 5 })
        );
    }

    #[test]
    fn cache_params_apply_jointly() {
        // capacity 64 is only valid together with the smaller line
        let spec = SweepSpec::new(
            point(),
            vec![
                axis(SweepParam::Capacity, &[64.0]),
                axis(SweepParam::LineSize, &[32.0]),
                axis(SweepParam::Associativity, &[1.0]),
            ],
            10,
        )
        .unwrap();
        assert_eq!(
            sweep(&spec, 1).unwrap()[0].point.last_level().line_size(),
            32
        );
    }

    #[test]
    fn invalid_combination_names_index() {
        let spec = SweepSpec::new(
            point(),
            vec![axis(SweepParam::LineSize, &[128.0, 4194304.0])],
            10,
        )
        .unwrap();
        let err = sweep(&spec, 1).unwrap_err();
        assert!(
            err.to_string().starts_with("sweep[1].cache.line_size"),
            "{err}"
        );
    }

    #[test]
    fn spec_validation() {
        assert!(SweepSpec::new(point(), vec![axis(SweepParam::Threads, &[])], 10).is_err());
        assert!(SweepSpec::new(point(), vec![axis(SweepParam::Threads, &[1.5])], 10).is_err());
        assert!(SweepSpec::new(
            point(),
            vec![
                axis(SweepParam::Threads, &[1.0]),
                axis(SweepParam::Threads, &[2.0])
            ],
            10
        )
        .is_err());
        assert_eq!(
            "bus_width".parse::<SweepParam>().unwrap(),
            SweepParam::BusWidth
        );
        assert!("voltage".parse::<SweepParam>().is_err());
    }

    #[test]
    fn layer_sweep_resizes_thermal() {
        let spec =
            SweepSpec::new(point(), vec![axis(SweepParam::Layers, &[1.0, 4.0])], 10).unwrap();
        let rows = sweep(&spec, 1).unwrap();
        assert_eq!(rows[0].point.thermal.layers().len(), 1);
        assert_eq!(rows[1].point.thermal.layers().len(), 4);
        assert_eq!(rows[1].result.total_power, 200.0);
        assert_eq!(
            rows[0].point.layer_assignment.caches,
            vec![vec![0], vec![0]]
        );
    }

    #[test]
    fn parallel_matches_sequential() {
        let spec = SweepSpec::new(
            point(),
            vec![
                axis(SweepParam::Threads, &[1.0, 2.0, 4.0, 8.0, 16.0]),
                axis(SweepParam::Capacity, &[262144.0, 1048576.0, 4194304.0]),
                axis(SweepParam::CyclesPerBusClock, &[1.0, 2.0, 4.0, 8.0]),
            ],
            1000,
        )
        .unwrap();
        assert_eq!(sweep(&spec, 1).unwrap(), sweep(&spec, 4).unwrap());
    }
}
