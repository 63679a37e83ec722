//! Radix tree versus linear scan on the same operation stream.
//!
//! The linear store is the reference implementation: a flat newest-first
//! list scanned end to end. The radix tree must agree with it on every
//! single query — same hit/miss verdict — while visiting far fewer
//! entries. This example replays one deterministic workload against all
//! four store × timestamp configurations and reports agreement and cost.
//!
//! Run with: `cargo run --release --example radix_vs_linear`

use std::time::Instant;

use rzt::{
    generate_workload, run_ops, PatternTable, ReconstructionConfig, TableMode, WorkloadSpec,
};

fn main() {
    let spec = WorkloadSpec::default();
    eprintln!(
        "generating workload: side {}, {} inserts, {} lookups, seed {}",
        spec.side, spec.entries, spec.queries, spec.seed
    );
    let ops = generate_workload(&spec).expect("default spec is valid");

    let mut traces = Vec::new();
    for (mode, timestamps) in [
        (TableMode::Linear, false),
        (TableMode::Linear, true),
        (TableMode::Radix, false),
        (TableMode::Radix, true),
    ] {
        let mut table = PatternTable::new(
            spec.side,
            mode,
            timestamps,
            ReconstructionConfig::default(),
        )
        .expect("valid side");
        let started = Instant::now();
        let trace = run_ops(&ops, &mut table).expect("sides match");
        let elapsed = started.elapsed();
        println!(
            "{:?} timestamps={:<5} hits={:<6} cost={:<12} wall={:.2?}",
            mode,
            timestamps,
            trace.stats.hits,
            trace.stats.cost(),
            elapsed
        );
        traces.push(trace);
    }

    // Hit/miss agreement across all four configurations, query by query.
    let reference: Vec<bool> = traces[0].matches.iter().map(Option::is_some).collect();
    let all_agree = traces
        .iter()
        .all(|t| t.matches.iter().map(Option::is_some).collect::<Vec<_>>() == reference);
    println!("all four configurations agree on every hit/miss: {all_agree}");

    // Within each store, timestamps must return the exact same entry.
    println!(
        "linear: timestamped run returns identical entries: {}",
        traces[0].matches == traces[1].matches
    );
    println!(
        "radix:  timestamped run returns identical entries: {}",
        traces[2].matches == traces[3].matches
    );
}
