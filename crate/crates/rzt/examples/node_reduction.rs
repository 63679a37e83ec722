//! Search-node reduction from zone-pattern reuse, over the bundled suite.
//!
//! Both runs use the same exact transposition table; the second also
//! consults a relevance-zone pattern table. Exact entries only fire on
//! identical positions, while a zone pattern fires on any position that
//! agrees inside its zone — so sibling subtrees that differ in irrelevant
//! outside stones are pruned instead of re-searched.
//!
//! Run with: `cargo run --release --example node_reduction`

use rzt::{parse_position, solve, Goal, Player, SolveConfig, TableUse};

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../problems");
    let manifest = std::fs::read_to_string(format!("{dir}/manifest.csv"))
        .expect("bundled problem manifest");
    let goal = Goal::new(Player::White);

    println!("{:<14} {:>9} {:>12} {:>9} {:>8}", "problem", "depth", "exact-tt", "with-rzt", "saved");
    let (mut strict, mut total) = (0u32, 0u32);
    for line in manifest.lines().skip(1) {
        let mut fields = line.split(',');
        let file = fields.next().expect("file column");
        let _side = fields.next().expect("side column");
        let depth: u32 = fields.next().expect("depth column").parse().expect("depth");
        let text = std::fs::read_to_string(format!("{dir}/{file}")).expect("problem readable");
        let p = parse_position(&text).expect("problem well-formed");

        let run = |table_use| {
            let cfg = SolveConfig {
                max_depth: depth,
                table_use,
                ..SolveConfig::default()
            };
            solve(&p, goal, &cfg, None)
        };
        let tt = run(TableUse::ExactTt);
        let both = run(TableUse::ExactTtRzt);
        assert_eq!(tt.outcome, both.outcome, "{file}: verdict must not change");
        assert!(both.nodes <= tt.nodes, "{file}: reuse must not cost nodes");

        total += 1;
        if both.nodes < tt.nodes {
            strict += 1;
        }
        println!(
            "{:<14} {:>9} {:>12} {:>9} {:>7.1}%",
            file.trim_end_matches(".txt"),
            depth,
            tt.nodes,
            both.nodes,
            100.0 * (tt.nodes - both.nodes) as f64 / tt.nodes as f64
        );
    }
    println!("\nstrictly fewer nodes on {strict} of {total} problems, never more");
}
