//! Timestamp-based lookup skipping, shown on a single query.
//!
//! Every pattern carries the global insertion stamp it received; every
//! radix node remembers the newest stamp below it. A searcher that missed
//! once records the global stamp it failed against. On its next lookup,
//! any subtree whose newest pattern is not newer than that stamp cannot
//! possibly match — it held no match last time and nothing was added — so
//! the walk prunes it at the root of the subtree.
//!
//! The effect below: the immediate retry of a missed query visits a
//! single node, and after fresh insertions a retry pays only for paths
//! the new patterns touched. A searcher that never missed (a fresh
//! stamp) still pays the full price, and the verdict is identical in
//! every case.
//!
//! Run with: `cargo run --release --example timestamp_skipping`

use rzt::{
    generate_workload, BenchOp, Lookup, PatternTable, ReconstructionConfig, SearchStamp, TableMode,
    WorkloadSpec,
};

fn main() {
    // A few thousand patterns from the synthetic workload generator.
    let spec = WorkloadSpec {
        entries: 4000,
        queries: 1,
        ..WorkloadSpec::default()
    };
    let ops = generate_workload(&spec).expect("spec is valid");
    let mut table = PatternTable::new(
        spec.side,
        TableMode::Radix,
        true,
        ReconstructionConfig::default(),
    )
    .expect("valid side");
    let mut inserts = ops.into_iter().filter_map(|op| match op {
        BenchOp::Insert(pat) => Some(pat),
        BenchOp::Lookup(_) => None,
    });
    for pat in inserts.by_ref().take(3000) {
        table.insert(pat).expect("sides match");
    }

    // A query position that misses: an empty board is never stored.
    let empty = rzt::parse_position("size: 7\nto_move: W\n.......\n.......\n.......\n.......\n.......\n.......\n.......\n")
        .expect("well-formed");

    let mut stamp = SearchStamp::new();
    let cost = |t: &PatternTable| t.stats().cost();

    let before = cost(&table);
    let verdict = table.lookup(&empty, &mut stamp).expect("sides match");
    let first_miss = cost(&table) - before;
    assert!(matches!(verdict, Lookup::Miss));
    println!("first lookup (fresh stamp):   {first_miss:>6} node visits -> miss");

    let before = cost(&table);
    let verdict = table.lookup(&empty, &mut stamp).expect("sides match");
    let retry = cost(&table) - before;
    assert!(matches!(verdict, Lookup::Miss));
    println!("immediate retry (same stamp): {retry:>6} node visits -> miss");

    for pat in inserts.by_ref().take(200) {
        table.insert(pat).expect("sides match");
    }
    let before = cost(&table);
    let verdict = table.lookup(&empty, &mut stamp).expect("sides match");
    let after_growth = cost(&table) - before;
    assert!(matches!(verdict, Lookup::Miss));
    println!("retry after 200 insertions:   {after_growth:>6} node visits -> miss");

    let mut fresh = SearchStamp::new();
    let before = cost(&table);
    let verdict = table.lookup(&empty, &mut fresh).expect("sides match");
    let fresh_cost = cost(&table) - before;
    assert!(matches!(verdict, Lookup::Miss));
    println!("same query, fresh stamp:      {fresh_cost:>6} node visits -> miss");

    assert!(retry <= first_miss && after_growth <= fresh_cost);
    println!(
        "\nskipping never changes a verdict; it only avoids re-walking subtrees\n\
         that were already known to hold no match."
    );
}
