#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};
use stacklaw::config::parse_config;
use stacklaw::dse::DesignPoint;

pub fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

pub fn stacklaw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stacklaw"))
        .args(args)
        .env_remove("STACKLAW_JOBS")
        .output()
        .expect("binary runs")
}

/// Base document: one 1 MiB cache, 16 B bus, two 50 W single-tile layers.
pub fn base_doc() -> Value {
    json!({
        "version": 1,
        "workload": {"c0": 1048576, "m0": 0.01, "refs_per_instr": 0.3,
                     "accesses_per_cycle_per_thread": 0.25, "base_cpi": 1.0},
        "cache": [{"capacity": 1048576, "line_size": 128, "associativity": 8}],
        "bus": {"width": 16, "cycles_per_bus_clock": 4, "leading_edge": 100},
        "geometry": {"edge_mm": 10, "layers": 2, "thickness_um": 50},
        "tsv": {"diameter_um": 5, "pitch_um": 10, "current_limit_a": 0.1,
                "cell_area_um2": 100, "supply_voltage_v": 1.0},
        "thermal": {"ambient_c": 40, "r_sink": 0.2,
                    "layers": [{"r_above": 0.1, "power_map": [[50.0]]},
                               {"r_above": 0.1, "power_map": [[50.0]]}]},
        "threads": 4
    })
}

pub fn point_from(doc: &Value) -> DesignPoint {
    parse_config(&doc.to_string())
        .expect("valid document")
        .point
}
