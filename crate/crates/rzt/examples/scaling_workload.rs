//! How lookup cost scales with table size.
//!
//! Runs the default synthetic workload (20k patterns, 80k lookups on 7×7)
//! against two identical radix tables — timestamps off and on — and prints
//! one row per reconstruction phase: the mean live node count, the mean
//! miss cost in node visits for both runs, and the scaling exponent
//! log(c_avg)/log(n_avg). Sublinear lookup shows up as an exponent well
//! below 1; timestamp skipping pushes the miss series further down.
//!
//! Run with: `cargo run --release --example scaling_workload`

use std::time::Instant;

use rzt::{log_cost_ratio, run_bench, ReconstructionConfig, WorkloadSpec};

fn main() {
    let spec = WorkloadSpec::default();
    eprintln!(
        "running paired benchmark: side {}, {} inserts, {} lookups, seed {}",
        spec.side, spec.entries, spec.queries, spec.seed
    );
    let started = Instant::now();
    let report = run_bench(&spec, ReconstructionConfig::default()).expect("default spec is valid");
    eprintln!("both runs finished in {:.2?}", started.elapsed());

    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>8} {:>8}",
        "phase", "n_avg", "miss_nt", "miss_ts", "exp_nt", "exp_ts"
    );
    for ph in &report.phases {
        let exp_nt = log_cost_ratio(ph.c_avg_miss_nt, ph.n_avg);
        let exp_ts = log_cost_ratio(ph.c_avg_miss_ts, ph.n_avg);
        println!(
            "{:>5} {:>12.1} {:>12.2} {:>12.2} {:>8} {:>8}",
            ph.phase,
            ph.n_avg,
            ph.c_avg_miss_nt,
            ph.c_avg_miss_ts,
            exp_nt.map_or_else(|| "-".into(), |r| format!("{r:.3}")),
            exp_ts.map_or_else(|| "-".into(), |r| format!("{r:.3}")),
        );
    }

    println!();
    println!(
        "outcomes identical across runs: {}",
        report.outcomes_identical()
    );
    println!(
        "timestamps never cost more on any single lookup: {}",
        report.per_query_cost_le()
    );
    let (nt, ts) = (report.total_cost_nt(), report.total_cost_ts());
    println!(
        "total traversing cost: {} without timestamps, {} with ({}x lower)",
        nt,
        ts,
        if ts > 0 { nt as f64 / ts as f64 } else { f64::INFINITY }
    );
}
