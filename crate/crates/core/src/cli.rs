//! Command-line front end.
//!
//! Exit codes: 0 success, 1 infeasible result, 2 usage or configuration
//! error, 3 internal or output error. Diagnostics go to stderr, results to
//! stdout or `--out`.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::config::{load_config, LoadedConfig};
use crate::dse::{self, Objective, Question, SweepSpec};
use crate::error::{Error, Result};
use crate::report::{
    emit_record, emit_report, result_record, sweep_records, Cell, Record, ReportFormat,
};
use crate::scaling_laws::{capacity_factor, ScalingQuery};
use crate::stack_geometry::{growth_advice, GrowthMode};
use crate::thermal_stack::thermal_feasible;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "stacklaw",
    version,
    about = "Closed-form design-space exploration for 3D-stacked processors"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Write results to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps (default: available cores).
    #[arg(long, global = true, env = "STACKLAW_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => ReportFormat::HumanTable,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the base design point of a config.
    Evaluate { config: PathBuf },
    /// Evaluate every point of the config's sweep.
    Sweep {
        config: PathBuf,
        /// Refuse sweeps larger than this.
        #[arg(long)]
        max_points: Option<usize>,
    },
    /// Sweep, then keep the unflagged Pareto-optimal points.
    Pareto {
        config: PathBuf,
        /// Comma-separated `metric[:min|max]` list, e.g. `throughput,max_temp`.
        #[arg(long)]
        objectives: String,
        #[arg(long)]
        max_points: Option<usize>,
    },
    /// Answer a design question about the base point.
    Advise {
        config: PathBuf,
        /// growth-direction | capacity-for-thread-doubling | bandwidth-headroom
        #[arg(long)]
        question: String,
        /// Footprint edge increment in mm (growth-direction).
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Check the stack's peak temperature; exits 1 when it exceeds the limit.
    ThermalCheck {
        config: PathBuf,
        /// Limit in °C; defaults to `constraints.t_max`.
        #[arg(long)]
        t_max: Option<f64>,
    },
    /// Total capacity multiplier for `k`x threads at `b`x bandwidth.
    Scaling {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = crate::cache_locality::DEFAULT_ALPHA)]
        alpha: f64,
    },
    /// Add a layer or grow the footprint?
    Geometry {
        /// Layer edge (mm).
        #[arg(long)]
        x: f64,
        /// Current layer count.
        #[arg(long)]
        n: u32,
        /// Edge increment (mm).
        #[arg(long)]
        delta: f64,
        /// Keep the second-order term instead of the `n < x/2δ` rule.
        #[arg(long)]
        exact: bool,
    },
    /// Compare homogeneous and functional layer compositions.
    Compare { config: PathBuf },
}

/// Run the CLI on `args` (including the program name) and return the exit
/// code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| execute(&cli)));
    let (bytes, code) = match outcome {
        Ok(Ok(out)) => out,
        Ok(Err(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_class(&e);
        }
        Err(_) => {
            let _ = writeln!(stderr, "error: internal failure");
            return EXIT_INTERNAL;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout
            .write_all(&bytes)
            .and_then(|_| stdout.flush())
            .map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => code,
        Err(msg) => {
            let _ = writeln!(stderr, "error: cannot write output: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn exit_class(e: &Error) -> i32 {
    match e {
        Error::Config { .. }
        | Error::Parse(_)
        | Error::Schema { .. }
        | Error::Domain(_)
        | Error::SweepTooLarge { .. }
        | Error::UndefinedIndex => EXIT_USAGE,
        Error::Saturated { .. } | Error::GeometricImpossibility { .. } => EXIT_INFEASIBLE,
        Error::Io(_) => EXIT_INTERNAL,
    }
}

/// Rendered output and exit code.
fn execute(cli: &Cli) -> Result<(Vec<u8>, i32)> {
    let format = ReportFormat::from(cli.format);
    let mut buf = Vec::new();
    let code = match &cli.command {
        Command::Evaluate { config } => {
            let cfg = load(config)?;
            let r = dse::evaluate(&cfg.point)?;
            emit_report(&[result_record(0, &[], &r)], format, &mut buf)?;
            if r.flags.any() {
                EXIT_INFEASIBLE
            } else {
                EXIT_OK
            }
        }
        Command::Sweep { config, max_points } => {
            let rows = run_sweep(config, *max_points, cli.jobs)?;
            emit_report(&sweep_records(&rows), format, &mut buf)?;
            EXIT_OK
        }
        Command::Pareto {
            config,
            objectives,
            max_points,
        } => {
            let objectives = Objective::parse_list(objectives)?;
            let rows = run_sweep(config, *max_points, cli.jobs)?;
            let results: Vec<_> = rows.iter().map(|r| r.result.clone()).collect();
            let front = dse::pareto(&results, &objectives)?;
            let front_rows: Vec<_> = front.iter().map(|&i| rows[i].clone()).collect();
            if front_rows.is_empty() && format != ReportFormat::Json {
                return Err(Error::config(
                    "objectives",
                    "no unflagged point has every objective defined",
                ));
            }
            emit_report(&sweep_records(&front_rows), format, &mut buf)?;
            EXIT_OK
        }
        Command::Advise {
            config,
            question,
            delta,
        } => {
            let cfg = load(config)?;
            let q: Question = question.parse()?;
            let advice = dse::advise(&cfg.point, q, *delta)?;
            emit_serialized(&advice, format, &mut buf)?;
            EXIT_OK
        }
        Command::ThermalCheck { config, t_max } => {
            let cfg = load(config)?;
            let limit = t_max
                .or(cfg.point.constraints.t_max)
                .ok_or_else(|| Error::config("t_max", "pass --t-max or set constraints.t_max"))?;
            if !limit.is_finite() {
                return Err(Error::config("t_max", "must be finite"));
            }
            let v = thermal_feasible(&cfg.point.thermal, limit);
            let record: Record = vec![
                ("feasible".into(), v.feasible.into()),
                ("t_max".into(), limit.into()),
                ("worst_temp".into(), v.worst_temp.into()),
                ("worst_layer".into(), (v.worst_layer as u64).into()),
                ("worst_tile".into(), (v.worst_tile as u64).into()),
            ];
            emit_record(&record, format, &mut buf)?;
            if v.feasible {
                EXIT_OK
            } else {
                EXIT_INFEASIBLE
            }
        }
        Command::Scaling { k, b, alpha } => {
            let q = ScalingQuery::new(*k, *b, *alpha).map_err(|e| e.at("scaling"))?;
            let record: Record = vec![
                ("k".into(), (*k).into()),
                ("b".into(), (*b).into()),
                ("alpha".into(), (*alpha).into()),
                ("capacity_factor".into(), capacity_factor(&q).into()),
            ];
            emit_record(&record, format, &mut buf)?;
            EXIT_OK
        }
        Command::Geometry { x, n, delta, exact } => {
            let mode = if *exact {
                GrowthMode::Exact
            } else {
                GrowthMode::PaperApprox
            };
            let advice = growth_advice(*x, *n, *delta, mode).map_err(|e| e.at("geometry"))?;
            let record: Record = vec![
                ("x".into(), (*x).into()),
                ("n".into(), u64::from(*n).into()),
                ("delta".into(), (*delta).into()),
                (
                    "mode".into(),
                    if *exact { "exact" } else { "approx" }.into(),
                ),
                ("advice".into(), advice.to_string().into()),
            ];
            emit_record(&record, format, &mut buf)?;
            EXIT_OK
        }
        Command::Compare { config } => {
            let cfg = load(config)?;
            let cmp = dse::compare_compositions(&cfg.point)?;
            emit_serialized(&cmp, format, &mut buf)?;
            EXIT_OK
        }
    };
    Ok((buf, code))
}

fn load(path: &Path) -> Result<LoadedConfig> {
    load_config(path).map_err(|e| match e {
        Error::Config { path: p, reason } if !p.starts_with(&path.display().to_string()) => {
            Error::Config {
                path: format!("{}: {p}", path.display()),
                reason,
            }
        }
        Error::Schema { path: p, reason } => Error::Schema {
            path: format!("{}: {p}", path.display()),
            reason,
        },
        Error::Parse(reason) => Error::Parse(format!("{}: {reason}", path.display())),
        other => other,
    })
}

fn run_sweep(
    config: &Path,
    max_points: Option<usize>,
    jobs: Option<usize>,
) -> Result<Vec<dse::SweepRow>> {
    let cfg = load(config)?;
    let spec: SweepSpec = match max_points {
        Some(m) => cfg.sweep.with_max_points(m),
        None => cfg.sweep,
    };
    let jobs = match jobs {
        Some(0) => return Err(Error::config("jobs", "must be >= 1")),
        Some(j) => j,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    dse::sweep(&spec, jobs)
}

/// Emit any serializable value as a flat record; nested objects become
/// dotted keys.
fn emit_serialized<T: Serialize>(
    value: &T,
    format: ReportFormat,
    out: &mut Vec<u8>,
) -> Result<usize> {
    let json = serde_json::to_value(value).map_err(|e| Error::Io(e.to_string()))?;
    let mut record = Record::new();
    flatten("", &json, &mut record);
    emit_record(&record, format, out)
}

fn flatten(prefix: &str, v: &Value, out: &mut Record) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().all(Value::is_number) => {
            out.push((
                prefix.to_string(),
                Cell::List(items.iter().filter_map(Value::as_f64).collect()),
            ));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::Number(n) => out.push((
            prefix.to_string(),
            n.as_f64().map_or(Cell::Missing, Cell::Num),
        )),
        Value::Bool(b) => out.push((prefix.to_string(), Cell::Bool(*b))),
        Value::String(s) => out.push((prefix.to_string(), Cell::Text(s.clone()))),
        Value::Null => out.push((prefix.to_string(), Cell::Missing)),
    }
}
