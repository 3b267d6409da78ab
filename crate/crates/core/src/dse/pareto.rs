use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::EvaluationResult;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Throughput,
    Cpi,
    MissRatio,
    Rho,
    Wait,
    MissPenalty,
    MaxTemp,
    HotspotIndex,
    TotalPower,
    TsvFraction,
    UsableArea,
}

impl Metric {
    pub const ALL: [Metric; 11] = [
        Metric::Throughput,
        Metric::Cpi,
        Metric::MissRatio,
        Metric::Rho,
        Metric::Wait,
        Metric::MissPenalty,
        Metric::MaxTemp,
        Metric::HotspotIndex,
        Metric::TotalPower,
        Metric::TsvFraction,
        Metric::UsableArea,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Metric::Throughput => "throughput",
            Metric::Cpi => "cpi",
            Metric::MissRatio => "miss_ratio",
            Metric::Rho => "rho",
            Metric::Wait => "wait",
            Metric::MissPenalty => "miss_penalty",
            Metric::MaxTemp => "max_temp",
            Metric::HotspotIndex => "hotspot_index",
            Metric::TotalPower => "total_power",
            Metric::TsvFraction => "tsv_fraction",
            Metric::UsableArea => "usable_area",
        }
    }

    /// Direction used when an objective names only the metric.
    pub fn natural_direction(&self) -> Direction {
        match self {
            Metric::Throughput | Metric::UsableArea => Direction::Max,
            _ => Direction::Min,
        }
    }

    pub fn value(&self, r: &EvaluationResult) -> Option<f64> {
        match self {
            Metric::Throughput => r.throughput,
            Metric::Cpi => r.cpi,
            Metric::MissRatio => Some(r.miss_ratio),
            Metric::Rho => Some(r.rho),
            Metric::Wait => r.wait,
            Metric::MissPenalty => r.miss_penalty,
            Metric::MaxTemp => Some(r.max_temp),
            Metric::HotspotIndex => r.hotspot_index,
            Metric::TotalPower => Some(r.total_power),
            Metric::TsvFraction => Some(r.tsv_fraction),
            Metric::UsableArea => Some(r.usable_area),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::config("objectives", format!("unknown metric `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Objective {
    pub metric: Metric,
    pub direction: Direction,
}

impl Objective {
    /// Parse `metric[:min|max],...`.
    pub fn parse_list(s: &str) -> Result<Vec<Objective>> {
        let objectives = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                let (name, dir) = match t.split_once(':') {
                    Some((n, d)) => (n.trim(), Some(d.trim())),
                    None => (t, None),
                };
                let metric: Metric = name.parse()?;
                let direction = match dir {
                    None => metric.natural_direction(),
                    Some("min") => Direction::Min,
                    Some("max") => Direction::Max,
                    Some(other) => {
                        return Err(Error::config(
                            "objectives",
                            format!("direction must be min or max, got `{other}`"),
                        ))
                    }
                };
                Ok(Objective { metric, direction })
            })
            .collect::<Result<Vec<_>>>()?;
        if objectives.is_empty() {
            return Err(Error::config(
                "objectives",
                "at least one objective is required",
            ));
        }
        Ok(objectives)
    }

    /// Value oriented so that larger is better.
    fn score(&self, r: &EvaluationResult) -> Option<f64> {
        self.metric.value(r).map(|v| match self.direction {
            Direction::Max => v,
            Direction::Min => -v,
        })
    }
}

fn dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
}

/// Indices of the non-dominated feasible results, in input order.
///
/// Flagged results and results missing an objective value are dropped
/// first. Equal score vectors do not dominate each other, so duplicates
/// all survive.
pub fn pareto(results: &[EvaluationResult], objectives: &[Objective]) -> Result<Vec<usize>> {
    if objectives.is_empty() {
        return Err(Error::config(
            "objectives",
            "at least one objective is required",
        ));
    }
    let mut candidates: Vec<(usize, Vec<f64>)> = results
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.flags.any())
        .filter_map(|(i, r)| {
            let scores: Option<Vec<f64>> = objectives.iter().map(|o| o.score(r)).collect();
            scores
                .filter(|s| s.iter().all(|v| v.is_finite()))
                .map(|s| (i, s))
        })
        .collect();

    // A dominator is lexicographically greater, so it is visited first, and
    // domination is transitive: checking against the kept set is enough.
    candidates.sort_by(|(ia, a), (ib, b)| lex_desc(a, b).then(ia.cmp(ib)));
    let mut kept: Vec<(usize, Vec<f64>)> = Vec::new();
    for (i, s) in candidates {
        if !kept.iter().any(|(_, k)| dominates(k, &s)) {
            kept.push((i, s));
        }
    }
    let mut frontier: Vec<usize> = kept.into_iter().map(|(i, _)| i).collect();
    frontier.sort_unstable();
    Ok(frontier)
}

fn lex_desc(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match y.partial_cmp(x).unwrap_or(Ordering::Equal) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}
