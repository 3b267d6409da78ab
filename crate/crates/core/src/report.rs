//! Report emission as an aligned table, CSV or JSON.
//!
//! CSV and JSON carry the same columns in the same order. Numbers are
//! written in shortest round-trip form; missing values are empty CSV fields
//! and JSON `null`.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::dse::{EvaluationResult, SweepParam, SweepRow};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    HumanTable,
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(ReportFormat::HumanTable),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::config("format", format!("unknown format `{other}`"))),
        }
    }
}

/// One report value.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    List(Vec<f64>),
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Num)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => v.to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::List(vs) => vs.iter().map(f64::to_string).collect::<Vec<_>>().join(";"),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::List(vs) => Value::Array(vs.iter().map(|v| Cell::Num(*v).json()).collect()),
            Cell::Missing => Value::Null,
        }
    }

    fn human(&self) -> String {
        match self {
            Cell::Num(v) => human_number(*v),
            Cell::List(vs) => vs
                .iter()
                .map(|v| human_number(*v))
                .collect::<Vec<_>>()
                .join(" "),
            Cell::Missing => "-".to_string(),
            other => other.csv(),
        }
    }
}

fn human_number(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{v:.0}")
    } else if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e9) {
        format!("{v:.4e}")
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Named cells in a fixed order.
pub type Record = Vec<(String, Cell)>;

/// Result columns, in emission order.
pub const RESULT_COLUMNS: [&str; 22] = [
    "cpi",
    "throughput",
    "miss_ratio",
    "trailing_edge",
    "rho",
    "queue_model",
    "wait",
    "miss_penalty",
    "max_temp",
    "layer_max_temp",
    "hotspot_index",
    "total_power",
    "tsv_count",
    "tsv_fraction",
    "usable_area",
    "bus_saturated",
    "thermal_infeasible",
    "cube_violated",
    "tsv_infeasible",
    "rho_over_limit",
    "area_over_limit",
    "flags",
];

pub fn result_record(index: usize, params: &[(SweepParam, f64)], r: &EvaluationResult) -> Record {
    let mut rec: Record = vec![("index".into(), Cell::Int(index as u64))];
    rec.extend(
        params
            .iter()
            .map(|(p, v)| (p.name().to_string(), Cell::Num(*v))),
    );
    let f = &r.flags;
    let cells: [Cell; 22] = [
        r.cpi.into(),
        r.throughput.into(),
        r.miss_ratio.into(),
        r.trailing_edge.into(),
        r.rho.into(),
        r.queue_model.name().into(),
        r.wait.into(),
        r.miss_penalty.into(),
        r.max_temp.into(),
        Cell::List(r.layer_max_temp.clone()),
        r.hotspot_index.into(),
        r.total_power.into(),
        r.tsv_count.into(),
        r.tsv_fraction.into(),
        r.usable_area.into(),
        f.bus_saturated.into(),
        f.thermal_infeasible.into(),
        f.cube_violated.into(),
        f.tsv_infeasible.into(),
        f.rho_over_limit.into(),
        f.area_over_limit.into(),
        f.symbols().into(),
    ];
    rec.extend(RESULT_COLUMNS.iter().map(|c| c.to_string()).zip(cells));
    rec
}

pub fn sweep_records(rows: &[SweepRow]) -> Vec<Record> {
    rows.iter()
        .map(|r| result_record(r.index, &r.params, &r.result))
        .collect()
}

/// Columns shown in the human table; the machine formats carry all of them.
const TABLE_COLUMNS: [&str; 9] = [
    "cpi",
    "throughput",
    "miss_ratio",
    "rho",
    "wait",
    "max_temp",
    "usable_area",
    "total_power",
    "flags",
];

/// Write `records` as a report and return the bytes written. All records
/// must share the same column names.
pub fn emit_report(records: &[Record], format: ReportFormat, out: &mut dyn Write) -> Result<usize> {
    if let Some(first) = records.first() {
        let names: Vec<&str> = first.iter().map(|(n, _)| n.as_str()).collect();
        for (i, r) in records.iter().enumerate() {
            if !r.iter().map(|(n, _)| n.as_str()).eq(names.iter().copied()) {
                return Err(Error::config(
                    format!("results[{i}]"),
                    "column set differs from the first row",
                ));
            }
        }
    }
    let bytes = match format {
        ReportFormat::Json => {
            let rows: Vec<Value> = records.iter().map(to_json_object).collect();
            let mut s = serde_json::to_string_pretty(&Value::Array(rows))
                .map_err(|e| Error::Io(e.to_string()))?;
            s.push('\n');
            s.into_bytes()
        }
        ReportFormat::Csv => {
            if records.is_empty() {
                return Err(Error::config(
                    "results",
                    "CSV report needs at least one row",
                ));
            }
            csv_bytes(records)?
        }
        ReportFormat::HumanTable => {
            if records.is_empty() {
                return Err(Error::config(
                    "results",
                    "table report needs at least one row",
                ));
            }
            table_bytes(records)
        }
    };
    out.write_all(&bytes)?;
    out.flush()?;
    Ok(bytes.len())
}

/// Write a single key/value record: a JSON object, a one-row CSV, or
/// `key  value` lines.
pub fn emit_record(record: &Record, format: ReportFormat, out: &mut dyn Write) -> Result<usize> {
    let bytes = match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&to_json_object(record))
                .map_err(|e| Error::Io(e.to_string()))?;
            s.push('\n');
            s.into_bytes()
        }
        ReportFormat::Csv => csv_bytes(std::slice::from_ref(record))?,
        ReportFormat::HumanTable => {
            let width = record.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut s = String::new();
            for (k, v) in record {
                s.push_str(&format!("{k:<width$}  {}\n", v.human()));
            }
            s.into_bytes()
        }
    };
    out.write_all(&bytes)?;
    out.flush()?;
    Ok(bytes.len())
}

fn to_json_object(record: &Record) -> Value {
    let mut m = Map::new();
    for (k, v) in record {
        m.insert(k.clone(), v.json());
    }
    Value::Object(m)
}

fn csv_bytes(records: &[Record]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(records[0].iter().map(|(k, _)| k.as_str()))
        .map_err(io)?;
    for r in records {
        w.write_record(r.iter().map(|(_, v)| v.csv())).map_err(io)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

fn table_bytes(records: &[Record]) -> Vec<u8> {
    // index, sweep parameters, then the summary columns
    let shown: Vec<usize> = records[0]
        .iter()
        .enumerate()
        .filter(|(_, (k, _))| {
            !RESULT_COLUMNS.contains(&k.as_str()) || TABLE_COLUMNS.contains(&k.as_str())
        })
        .map(|(i, _)| i)
        .collect();
    let header: Vec<String> = shown.iter().map(|&i| records[0][i].0.clone()).collect();
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| shown.iter().map(|&i| r[i].1.human()).collect())
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| -> String {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.push('\n');
        s
    };
    let mut out = line(&header);
    for r in &rows {
        out.push_str(&line(r));
    }
    out.into_bytes()
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::HumanTable => "table",
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        })
    }
}
