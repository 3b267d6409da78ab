//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::process::ExitCode;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use stacklaw::bus_bandwidth::{queuing_delay, QueueModel};
use stacklaw::cache_locality::{
    dislocation_factor, miss_rate, trailing_edge, BusSpec, LocalityModel,
};
use stacklaw::config::load_config;
use stacklaw::dse::{evaluate, pareto, Direction, EvaluationResult, Flags, Metric, Objective};
use stacklaw::scaling_laws::{
    capacity_factor, capacity_for_bandwidth, wire_length_ratio, wire_performance_factor,
    ScalingQuery,
};
use stacklaw::stack_geometry::{
    growth_advice, tsv_area_budget, GrowthAdvice, GrowthMode, TsvSpec, TSV_FRACTION_LIMIT,
};
use stacklaw::thermal_stack::{
    hotspot_overlap_index, layer_temperatures, sink_heat, LayerThermal, PowerMap, ThermalStack,
};

use common::{base_doc, configs_dir, point_from, stacklaw};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Capacity multiplier that scales the miss rate by `target`, found by
/// bisection on the miss law alone.
fn bisect_capacity_multiplier(model: &LocalityModel, target: f64) -> f64 {
    let base = miss_rate(model.c0(), model).unwrap();
    let ratio = |c: f64| miss_rate(c * model.c0(), model).unwrap() / base;
    let (mut lo, mut hi) = (1e-6f64, 1e12f64);
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if ratio(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo * hi).sqrt()
}

fn c1_factor_of_eight() -> Check {
    let f = capacity_factor(&ScalingQuery::new(2.0, 1.0, 0.5).unwrap());
    ensure!(f == 8.0, "capacity_factor(2, 1, 0.5) = {f}");
    // tiny m0 keeps the law away from the clamp at 1 across the bracket
    let model = LocalityModel::new(1.0, 1e-15, 0.5).unwrap();
    // each of k copies gets b/k of the bandwidth, so its miss rate must fall by b/k
    let oracle = 2.0 * bisect_capacity_multiplier(&model, 1.0 / 2.0);
    ensure!(rel_close(f, oracle, 1e-9), "oracle {oracle} vs {f}");
    let mut r = rng(1);
    for _ in 0..200 {
        let k = r.gen_range(1.0..8.0);
        let b = r.gen_range(0.5..4.0);
        let alpha = r.gen_range(0.3..=1.0);
        let f = capacity_factor(&ScalingQuery::new(k, b, alpha).unwrap());
        let model = LocalityModel::new(1.0, 1e-15, alpha).unwrap();
        let oracle = k * bisect_capacity_multiplier(&model, b / k);
        ensure!(
            rel_close(f, oracle, 1e-9),
            "k={k} b={b} alpha={alpha}: {f} vs oracle {oracle}"
        );
    }
    Ok(())
}

fn c2_bandwidth_cut() -> Check {
    let c = capacity_for_bandwidth(0.5, 0.5).unwrap();
    ensure!(c == 4.0, "capacity_for_bandwidth(0.5, 0.5) = {c}");
    let mut r = rng(2);
    for _ in 0..1000 {
        let b1 = r.gen_range(0.05..20.0);
        let b2 = r.gen_range(0.05..20.0);
        let alpha = r.gen_range(0.1..=1.0);
        let joint = capacity_for_bandwidth(b1 * b2, alpha).unwrap();
        let split =
            capacity_for_bandwidth(b1, alpha).unwrap() * capacity_for_bandwidth(b2, alpha).unwrap();
        ensure!(
            rel_close(joint, split, 1e-9),
            "b1={b1} b2={b2} alpha={alpha}: {joint} vs {split}"
        );
    }
    Ok(())
}

fn c3_fungibility() -> Check {
    let mut r = rng(3);
    for i in 0..100 {
        let mut doc = base_doc();
        let c0 = 1u64 << r.gen_range(12..=20);
        let capacity = c0 << r.gen_range(0..=6);
        doc["workload"]["c0"] = c0.into();
        doc["workload"]["m0"] = r.gen_range(0.001..0.2).into();
        doc["workload"]["accesses_per_cycle_per_thread"] = r.gen_range(0.01..1.0).into();
        doc["threads"] = r.gen_range(1..=16).into();
        doc["cache"][0] = serde_json::json!({
            "capacity": capacity,
            "line_size": 1u64 << r.gen_range(5..=8),
            "associativity": 1u32 << r.gen_range(0..=3),
        });
        doc["bus"]["width"] = (1u32 << r.gen_range(2..=5)).into();
        doc["bus"]["cycles_per_bus_clock"] = r.gen_range(1..=8).into();
        let before = point_from(&doc);

        // halve bandwidth (alternating between clock and width), quadruple capacity
        let mut after_doc = doc.clone();
        after_doc["cache"][0]["capacity"] = (capacity * 4).into();
        if i % 2 == 0 {
            let cycles = doc["bus"]["cycles_per_bus_clock"].as_u64().unwrap();
            after_doc["bus"]["cycles_per_bus_clock"] = (cycles * 2).into();
        } else {
            let width = doc["bus"]["width"].as_u64().unwrap();
            after_doc["bus"]["width"] = (width / 2).into();
        }
        let after = point_from(&after_doc);

        let (a, b) = (evaluate(&before).unwrap(), evaluate(&after).unwrap());
        ensure!(
            a.miss_ratio < 1.0 && b.miss_ratio < 1.0,
            "sample {i} hit the miss-rate clamp"
        );
        ensure!(
            rel_close(a.rho, b.rho, 1e-12),
            "sample {i}: rho {} became {}",
            a.rho,
            b.rho
        );
    }
    Ok(())
}

fn c4_growth() -> Check {
    let advice = |x: f64, n: u32, d: f64, mode| growth_advice(x, n, d, mode).unwrap();
    // approx: n < x/(2δ), checked as 2nδ vs x; all values dyadic so exact
    for xi in 1..=50 {
        for n in 1..=50u32 {
            for di in 1..=50 {
                let (x, d) = (f64::from(xi), f64::from(di) / 4.0);
                let lhs = 2.0 * f64::from(n) * d;
                let expected = if lhs < x {
                    GrowthAdvice::AddLayer
                } else if lhs > x {
                    GrowthAdvice::GrowFootprint
                } else {
                    GrowthAdvice::Indifferent
                };
                let got = advice(x, n, d, GrowthMode::PaperApprox);
                ensure!(
                    got == expected,
                    "approx x={x} n={n} δ={d}: {got} vs {expected}"
                );
            }
        }
    }
    let mut r = rng(4);
    for _ in 0..10_000 {
        let x = f64::from(r.gen_range(1..=800)) / 8.0;
        let d = f64::from(r.gen_range(1..=80)) / 8.0;
        let n = r.gen_range(1..=64u32);
        let nf = f64::from(n);
        // compare total areas of the two outcomes directly
        let add = (nf + 1.0) * x * x;
        let grow = nf * (x + d) * (x + d);
        let expected = if add > grow {
            GrowthAdvice::AddLayer
        } else if add < grow {
            GrowthAdvice::GrowFootprint
        } else {
            GrowthAdvice::Indifferent
        };
        let exact = advice(x, n, d, GrowthMode::Exact);
        ensure!(
            exact == expected,
            "exact x={x} n={n} δ={d}: {exact} vs {expected}"
        );
        let approx = advice(x, n, d, GrowthMode::PaperApprox);
        if approx != exact {
            let gap = (x * x - 2.0 * nf * d * x).abs();
            ensure!(
                gap <= nf * d * d,
                "modes disagree outside the dropped term: x={x} n={n} δ={d}"
            );
        }
    }
    Ok(())
}

fn c5_trailing_edge() -> Check {
    let te = trailing_edge(128, &BusSpec::new(16, 4, 0.0).unwrap());
    ensure!(te == 32, "trailing_edge(128, 16 B, 4) = {te}");
    let mut r = rng(5);
    for _ in 0..1000 {
        let width = 1u32 << r.gen_range(0..=6);
        let bus = BusSpec::new(width, r.gen_range(1..=16), 0.0).unwrap();
        let line = u64::from(width) * r.gen_range(1..=4096u64);
        let (one, two) = (trailing_edge(line, &bus), trailing_edge(2 * line, &bus));
        ensure!(two == 2 * one, "line {line}, width {width}: {one} -> {two}");
    }
    Ok(())
}

fn c6_queuing() -> Check {
    for te in [1.0, 7.0, 32.0, 1000.0] {
        let w0 = queuing_delay(0.0, te).unwrap();
        ensure!(w0 == 0.0, "W(0, {te}) = {w0}");
        let ratio = queuing_delay(0.9, te).unwrap() / queuing_delay(0.5, te).unwrap();
        ensure!(
            (ratio - 9.0).abs() <= 1e-9 * 9.0,
            "W(0.9)/W(0.5) = {ratio} at te {te}"
        );
    }
    let w = queuing_delay(0.5, 32.0).unwrap();
    ensure!(w == 16.0, "W(0.5, 32) = {w}");
    let mut prev = -1.0;
    for i in 0..=999 {
        let rho = f64::from(i) / 1000.0;
        let w = queuing_delay(rho, 32.0).unwrap();
        ensure!(w > prev, "W not increasing at rho {rho}");
        prev = w;
    }
    Ok(())
}

fn c7_dislocation() -> Check {
    let d = dislocation_factor(1024, 1024).unwrap();
    ensure!(
        d == 1_048_576 && d >= 1_000_000,
        "dislocation_factor(1024, 1024) = {d}"
    );
    Ok(())
}

fn random_stack(r: &mut ChaCha8Rng) -> ThermalStack {
    let layers = r.gen_range(1..=8);
    let (rows, cols) = (r.gen_range(1..=16), r.gen_range(1..=16));
    let layers = (0..layers)
        .map(|_| {
            let tiles = (0..rows * cols)
                .map(|_| {
                    if r.gen_bool(0.1) {
                        0.0
                    } else {
                        r.gen_range(0.0..5.0)
                    }
                })
                .collect();
            LayerThermal::new(
                PowerMap::new(rows, cols, tiles).unwrap(),
                r.gen_range(0.01..2.0),
            )
            .unwrap()
        })
        .collect();
    ThermalStack::new(layers, r.gen_range(0.01..1.0), r.gen_range(0.0..60.0)).unwrap()
}

fn c8_thermal() -> Check {
    let mut r = rng(8);
    for s in 0..1000 {
        let stack = random_stack(&mut r);
        let total = stack.total_power();
        let sunk: f64 = sink_heat(&stack).iter().sum();
        ensure!(
            (sunk - total).abs() <= 1e-9 * total.max(f64::MIN_POSITIVE),
            "stack {s}: sink heat {sunk} vs power {total}"
        );
        let temps = layer_temperatures(&stack);
        for l in 1..temps.temps.len() {
            for (t, (hi, lo)) in temps.temps[l].iter().zip(&temps.temps[l - 1]).enumerate() {
                ensure!(
                    hi >= lo,
                    "stack {s}: layer {l} tile {t} cooler than the layer below"
                );
            }
        }
        let k = r.gen_range(0.1..10.0);
        let scaled_layers = stack
            .layers()
            .iter()
            .map(|l| LayerThermal::new(l.power_map().scaled(k).unwrap(), l.r_above()).unwrap())
            .collect();
        let scaled = layer_temperatures(&stack.with_layers(scaled_layers).unwrap());
        let amb = stack.ambient_c();
        for (a, b) in temps
            .temps
            .iter()
            .flatten()
            .zip(scaled.temps.iter().flatten())
        {
            let (rise, scaled_rise) = (a - amb, b - amb);
            ensure!(
                (scaled_rise - k * rise).abs() <= 1e-9 * (k * rise).abs().max(1e-12),
                "stack {s}: rise {rise} x {k} gave {scaled_rise}"
            );
        }
    }
    Ok(())
}

fn c9_hotspot() -> Check {
    for (rows, cols) in [(1, 2), (2, 2), (3, 3), (4, 5), (7, 3), (16, 16)] {
        let g = (rows * cols) as f64;
        for p in [1.0, 3.7, 50.0, 0.1] {
            let layer = |map: PowerMap| LayerThermal::new(map, 0.1).unwrap();
            let stack = |a: PowerMap, b: PowerMap| {
                ThermalStack::new(vec![layer(a), layer(b)], 0.2, 25.0).unwrap()
            };
            let hot = |tile| PowerMap::hotspot(rows, cols, tile, p).unwrap();
            let aligned = hotspot_overlap_index(&stack(hot(0), hot(0))).unwrap();
            ensure!(aligned == g, "{rows}x{cols} aligned: {aligned} vs {g}");
            let disjoint = hotspot_overlap_index(&stack(hot(0), hot(rows * cols - 1))).unwrap();
            ensure!(
                disjoint == g / 2.0,
                "{rows}x{cols} disjoint: {disjoint} vs {}",
                g / 2.0
            );
            let uni = || PowerMap::uniform(rows, cols, p).unwrap();
            let uniform = hotspot_overlap_index(&stack(uni(), uni())).unwrap();
            ensure!(uniform == 1.0, "{rows}x{cols} uniform: {uniform}");
        }
    }
    Ok(())
}

fn c10_wires() -> Check {
    let w = wire_performance_factor(4).unwrap();
    ensure!(w == 2.0, "wire_performance_factor(4) = {w}");
    let l = wire_length_ratio(20.0, 20.0).unwrap();
    ensure!(l == 1000.0, "wire_length_ratio(20 mm, 20 um) = {l}");
    Ok(())
}

fn c11_tsv_budget() -> Check {
    // one TSV (1 W / 1 V / 1 A) on 1 mm², so the fraction is cell area / 1e6
    let budget = |cell: f64| {
        tsv_area_budget(1.0, 1.0, &TsvSpec::new(1.0, 1.0, 1.0, cell).unwrap(), 1.0).unwrap()
    };
    let at = budget(TSV_FRACTION_LIMIT * 1e6);
    ensure!(
        at.fraction == TSV_FRACTION_LIMIT,
        "boundary fraction {}",
        at.fraction
    );
    ensure!(at.feasible, "fraction exactly 1/e must be feasible");
    let over = budget((TSV_FRACTION_LIMIT + 1e-9) * 1e6);
    ensure!(
        over.fraction > TSV_FRACTION_LIMIT && !over.feasible,
        "1/e + 1e-9 must be infeasible"
    );

    let mut r = rng(11);
    for _ in 0..1000 {
        let tsv =
            TsvSpec::new(5.0, 10.0, r.gen_range(0.01..1.0), r.gen_range(25.0..400.0)).unwrap();
        let (p, v, a) = (
            r.gen_range(0.0..300.0),
            r.gen_range(0.5..2.0),
            r.gen_range(50.0..400.0),
        );
        let get = |p: f64, v: f64, a: f64| tsv_area_budget(p, v, &tsv, a).ok();
        let (Some(base), Some(more_p), Some(more_a), Some(more_v)) = (
            get(p, v, a),
            get(p * 1.5, v, a),
            get(p, v, a * 1.5),
            get(p, v * 1.5, a),
        ) else {
            continue; // above the whole layer: a geometric impossibility
        };
        ensure!(
            more_p.fraction >= base.fraction,
            "fraction fell with more power"
        );
        ensure!(
            more_a.fraction <= base.fraction,
            "fraction rose with more area"
        );
        ensure!(
            more_v.fraction <= base.fraction,
            "fraction rose with higher voltage"
        );
        ensure!(
            more_p.tsv_count >= base.tsv_count,
            "count fell with more power"
        );
        ensure!(
            !base.feasible || more_a.feasible,
            "feasibility lost with more area"
        );
        ensure!(
            base.feasible || !more_p.feasible,
            "feasibility gained with more power"
        );
    }
    Ok(())
}

fn random_result(r: &mut ChaCha8Rng) -> EvaluationResult {
    // a small value alphabet forces ties and duplicates
    let mut v = || f64::from(r.gen_range(0..6u8));
    let mut result = EvaluationResult {
        cpi: Some(v() + 1.0),
        throughput: Some(v()),
        miss_ratio: v() / 10.0,
        trailing_edge: 32.0,
        rho: v() / 10.0,
        queue_model: QueueModel::Md1,
        wait: Some(v()),
        miss_penalty: Some(v()),
        max_temp: 40.0 + v(),
        layer_max_temp: vec![],
        hotspot_index: Some(v()),
        total_power: v(),
        tsv_count: 0,
        tsv_fraction: v() / 100.0,
        usable_area: v(),
        flags: Flags::default(),
    };
    if r.gen_bool(0.1) {
        result.throughput = None;
        result.cpi = None;
        result.wait = None;
    }
    if r.gen_bool(0.05) {
        result.hotspot_index = None;
    }
    result.flags.thermal_infeasible = r.gen_bool(0.1);
    result
}

fn brute_force_front(results: &[EvaluationResult], objectives: &[Objective]) -> Vec<usize> {
    let scores: Vec<Option<Vec<f64>>> = results
        .iter()
        .map(|r| {
            if r.flags.any() {
                return None;
            }
            objectives
                .iter()
                .map(|o| {
                    o.metric.value(r).map(|v| match o.direction {
                        Direction::Max => v,
                        Direction::Min => -v,
                    })
                })
                .collect()
        })
        .collect();
    let dominates = |a: &[f64], b: &[f64]| {
        a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
    };
    (0..results.len())
        .filter(|&i| {
            let Some(si) = &scores[i] else { return false };
            !scores.iter().flatten().any(|sj| dominates(sj, si))
        })
        .collect()
}

fn c12_pareto() -> Check {
    let mut r = rng(12);
    for set in 0..200 {
        let results: Vec<_> = (0..100).map(|_| random_result(&mut r)).collect();
        let k = r.gen_range(1..=3);
        let objectives: Vec<Objective> = Metric::ALL
            .choose_multiple(&mut r, k)
            .map(|&metric| Objective {
                metric,
                direction: if r.gen_bool(0.5) {
                    Direction::Min
                } else {
                    Direction::Max
                },
            })
            .collect();
        let front = pareto(&results, &objectives).map_err(|e| e.to_string())?;
        let expected = brute_force_front(&results, &objectives);
        ensure!(
            front == expected,
            "set {set}: {front:?} vs brute force {expected:?}"
        );
        let sub: Vec<_> = front.iter().map(|&i| results[i].clone()).collect();
        let again = pareto(&sub, &objectives).map_err(|e| e.to_string())?;
        ensure!(
            again == (0..sub.len()).collect::<Vec<_>>(),
            "set {set}: not idempotent"
        );
    }
    Ok(())
}

fn c13_determinism() -> Check {
    let config = configs_dir().join("sweep_6d.json");
    let loaded = load_config(&config).map_err(|e| e.to_string())?;
    let axes = loaded.sweep.axes().len();
    let count = loaded.sweep.point_count().unwrap_or(usize::MAX);
    ensure!(axes == 6 && count <= 10_000, "{axes} axes, {count} points");
    let path = config.to_str().unwrap();
    let one = stacklaw(&["sweep", path, "--format", "csv", "--jobs", "1"]);
    let eight = stacklaw(&["sweep", path, "--format", "csv", "--jobs", "8"]);
    ensure!(
        one.status.code() == Some(0) && eight.status.code() == Some(0),
        "sweep failed"
    );
    ensure!(one.stdout.len() > 1000, "suspiciously short output");
    let lines = one
        .stdout
        .split(|&b| b == b'\n')
        .filter(|l| !l.is_empty())
        .count();
    ensure!(lines == count + 1, "{lines} lines for {count} points");
    ensure!(one.stdout == eight.stdout, "--jobs 1 and --jobs 8 differ");
    Ok(())
}

fn c14_cli() -> Check {
    let json = |out: &std::process::Output| -> Result<Value, String> {
        serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
    };

    let out = stacklaw(&["scaling", "--k", "2", "--b", "1", "--alpha", "0.5"]);
    ensure!(
        out.status.code() == Some(0),
        "scaling exit {:?}",
        out.status.code()
    );
    let text = String::from_utf8_lossy(&out.stdout);
    ensure!(
        text.lines()
            .any(|l| l.split_whitespace().eq(["capacity_factor", "8"])),
        "scaling printed {text}"
    );
    let out = stacklaw(&[
        "scaling", "--k", "2", "--b", "1", "--alpha", "0.5", "--format", "json",
    ]);
    ensure!(
        json(&out)?["capacity_factor"] == 8.0,
        "json capacity factor"
    );

    let out = stacklaw(&["geometry", "--x", "10", "--n", "4", "--delta", "1"]);
    ensure!(
        out.status.code() == Some(0),
        "geometry exit {:?}",
        out.status.code()
    );
    ensure!(
        String::from_utf8_lossy(&out.stdout).contains("AddLayer"),
        "geometry did not advise AddLayer"
    );

    let sample = configs_dir().join("two_layer.json");
    let sample = sample.to_str().unwrap();
    let out = stacklaw(&["thermal-check", sample, "--t-max", "64", "--format", "json"]);
    ensure!(
        out.status.code() == Some(1),
        "thermal-check exit {:?}",
        out.status.code()
    );
    ensure!(
        json(&out)?["worst_temp"] == 65.0,
        "sample should peak at 65 C"
    );
    let out = stacklaw(&["thermal-check", sample, "--t-max", "65"]);
    ensure!(out.status.code() == Some(0), "65 C limit is inclusive");

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut cases: Vec<(String, &str)> = Vec::new();
    let mut doc = base_doc();
    doc["cache"][0]["line_size"] = 2097152.into();
    cases.push((doc.to_string(), "cache[0].line_size"));
    let mut doc = base_doc();
    doc["bus"]["widht"] = 16.into();
    cases.push((doc.to_string(), "bus.widht"));
    let mut doc = base_doc();
    doc["thermal"]["layers"][1]["power_map"] = serde_json::json!([[1.0, 2.0]]);
    cases.push((doc.to_string(), "thermal.layers[1].power_map"));
    cases.push(("{\"version\": 1,".to_string(), "line 1"));
    for (i, (text, path)) in cases.iter().enumerate() {
        let file = dir.path().join(format!("bad{i}.json"));
        std::fs::write(&file, text).map_err(|e| e.to_string())?;
        let out = stacklaw(&["evaluate", file.to_str().unwrap()]);
        let err = String::from_utf8_lossy(&out.stderr);
        ensure!(
            out.status.code() == Some(2),
            "malformed config {i} exited {:?}",
            out.status.code()
        );
        ensure!(
            err.contains(path),
            "diagnostic for config {i} lacks `{path}`: {err}"
        );
        ensure!(out.stdout.is_empty(), "malformed config {i} wrote results");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("factor-of-8 capacity scaling", c1_factor_of_eight),
        ("bandwidth-cut law and composition", c2_bandwidth_cut),
        ("end-to-end fungibility of B/2 and 4C", c3_fungibility),
        ("growth criterion, approximate and exact", c4_growth),
        ("trailing edge", c5_trailing_edge),
        ("M/D/1 queuing delay", c6_queuing),
        ("dislocation factor", c7_dislocation),
        ("thermal conservation, monotonicity, linearity", c8_thermal),
        ("hotspot overlap index", c9_hotspot),
        ("wire factors", c10_wires),
        ("1/e TSV area budget", c11_tsv_budget),
        ("Pareto frontier vs brute force", c12_pareto),
        ("sweep determinism across --jobs", c13_determinism),
        ("CLI contract", c14_cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2}  PASS  {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}  FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
