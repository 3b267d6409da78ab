use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{evaluate, DesignPoint};
use crate::error::{Error, Result};
use crate::scaling_laws::{capacity_factor, ScalingQuery};
use crate::stack_geometry::{growth_advice, GrowthAdvice, GrowthMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Question {
    GrowthDirection,
    CapacityForThreadDoubling,
    BandwidthHeadroom,
}

impl FromStr for Question {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "growth-direction" => Ok(Question::GrowthDirection),
            "capacity-for-thread-doubling" => Ok(Question::CapacityForThreadDoubling),
            "bandwidth-headroom" => Ok(Question::BandwidthHeadroom),
            other => Err(Error::config(
                "question",
                format!(
                    "unknown question `{other}`; expected growth-direction, \
                     capacity-for-thread-doubling or bandwidth-headroom"
                ),
            )),
        }
    }
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Question::GrowthDirection => "growth-direction",
            Question::CapacityForThreadDoubling => "capacity-for-thread-doubling",
            Question::BandwidthHeadroom => "bandwidth-headroom",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "question", rename_all = "snake_case")]
pub enum Advice {
    GrowthDirection {
        edge_mm: f64,
        layers: u32,
        delta_mm: f64,
        /// `x / 2δ`: adding a layer wins below this layer count.
        threshold_layers: f64,
        approx: GrowthAdvice,
        exact: GrowthAdvice,
    },
    CapacityForThreadDoubling {
        alpha: f64,
        capacity_factor: f64,
    },
    BandwidthHeadroom {
        rho: f64,
        rho_max: f64,
        /// `None` when the bus carries no traffic.
        thread_multiplier: Option<f64>,
    },
}

/// Answer `question` for `point`. Growth questions need `delta_mm`.
/// Bandwidth headroom is measured against `constraints.rho_max`, or against
/// saturation when no limit is configured.
pub fn advise(point: &DesignPoint, question: Question, delta_mm: Option<f64>) -> Result<Advice> {
    point.validate()?;
    match question {
        Question::GrowthDirection => {
            let delta = delta_mm
                .ok_or_else(|| Error::config("delta", "growth-direction needs --delta <mm>"))?;
            if !(delta > 0.0) {
                return Err(Error::config("delta", format!("must be > 0, got {delta}")));
            }
            let x = point.geometry.edge_mm();
            let n = point.geometry.layers();
            Ok(Advice::GrowthDirection {
                edge_mm: x,
                layers: n,
                delta_mm: delta,
                threshold_layers: x / (2.0 * delta),
                approx: growth_advice(x, n, delta, GrowthMode::PaperApprox)?,
                exact: growth_advice(x, n, delta, GrowthMode::Exact)?,
            })
        }
        Question::CapacityForThreadDoubling => {
            let alpha = point.locality.alpha();
            Ok(Advice::CapacityForThreadDoubling {
                alpha,
                capacity_factor: capacity_factor(&ScalingQuery::new(2.0, 1.0, alpha)?),
            })
        }
        Question::BandwidthHeadroom => {
            let rho = evaluate(point)?.rho;
            let rho_max = point.constraints.rho_max.unwrap_or(1.0);
            Ok(Advice::BandwidthHeadroom {
                rho,
                rho_max,
                thread_multiplier: (rho > 0.0).then(|| rho_max / rho),
            })
        }
    }
}
