mod common;

use serde_json::Value;
use stacklaw::config::load_config;
use stacklaw::dse::sweep;
use stacklaw::report::{emit_report, sweep_records, ReportFormat};

use common::configs_dir;

fn emit(format: ReportFormat) -> Vec<u8> {
    let loaded = load_config(&configs_dir().join("sweep_6d.json")).unwrap();
    let rows = sweep(&loaded.sweep, 4).unwrap();
    let mut out = Vec::new();
    emit_report(&sweep_records(&rows), format, &mut out).unwrap();
    out
}

/// Render a JSON value the way a CSV field carries it.
fn as_field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => n.as_f64().unwrap().to_string(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Array(items) => items.iter().map(as_field).collect::<Vec<_>>().join(";"),
        Value::Object(_) => panic!("nested object in report"),
    }
}

#[test]
fn csv_matches_json_field_by_field() {
    let csv_bytes = emit(ReportFormat::Csv);
    let json: Vec<serde_json::Map<String, Value>> =
        serde_json::from_slice(&emit(ReportFormat::Json)).unwrap();
    let mut reader = csv::Reader::from_reader(csv_bytes.as_slice());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), json.len());
    for (row, obj) in rows.iter().zip(&json) {
        assert_eq!(
            obj.keys().cloned().collect::<Vec<_>>(),
            header,
            "column order"
        );
        for (name, field) in header.iter().zip(row.iter()) {
            let v = &obj[name];
            assert_eq!(field, as_field(v), "column {name}");
            if let Value::Number(n) = v {
                // shortest round-trip form parses back to the same bits
                assert_eq!(
                    field.parse::<f64>().unwrap().to_bits(),
                    n.as_f64().unwrap().to_bits()
                );
            }
        }
    }
}

#[test]
fn emission_is_byte_stable() {
    for f in [
        ReportFormat::Csv,
        ReportFormat::Json,
        ReportFormat::HumanTable,
    ] {
        assert_eq!(emit(f), emit(f), "{f}");
    }
}

#[test]
fn json_carries_every_flag() {
    let json: Vec<Value> = serde_json::from_slice(&emit(ReportFormat::Json)).unwrap();
    for key in [
        "bus_saturated",
        "thermal_infeasible",
        "cube_violated",
        "tsv_infeasible",
        "rho_over_limit",
        "area_over_limit",
    ] {
        assert!(json.iter().all(|r| r[key].is_boolean()), "{key}");
    }
    // the sweep reaches saturation at the narrow bus with many threads
    assert!(json
        .iter()
        .any(|r| r["bus_saturated"] == true && r["wait"].is_null()));
}
