//! Exhaustively verify the patterns a solve produces.
//!
//! A zone pattern claims: any legal position that agrees with the stored
//! one on every zone cell — regardless of what sits outside — is a win
//! for the same player. This example makes the solver show its work: it
//! solves a 3x3 problem, collects every pattern the search inserted, and
//! checks each claim by enumerating all 3^k completions of the outside
//! cells and running an independent brute-force search on every legal
//! one.
//!
//! Run with: `cargo run --release --example pattern_verification`

use rzt::{
    parse_position, render_position, solve, Goal, Player, PatternTable, ReconstructionConfig,
    RzpVerifier, SolveConfig, TableMode, VerifyOutcome,
};

fn main() {
    let problem = parse_position("size: 3\nto_move: W\n...\nOO.\n...\n").expect("well-formed");
    println!("{}", render_position(&problem));

    let goal = Goal::new(Player::White);
    let cfg = SolveConfig {
        max_depth: 8,
        ..SolveConfig::default()
    };
    let mut table = PatternTable::new(3, TableMode::Radix, true, ReconstructionConfig::default())
        .expect("valid side");
    let result = solve(&problem, goal, &cfg, Some(&mut table));
    println!(
        "outcome: {:?} after {} nodes; the search inserted {} patterns\n",
        result.outcome,
        result.nodes,
        table.stats().entries
    );

    // Budget: a pattern with k cells outside its zone has 3^k completions.
    let mut verifier = RzpVerifier::new(goal, 18, 3u64.pow(9));
    let (mut verified, mut skipped) = (0u32, 0u32);
    for pattern in table.patterns() {
        match verifier.verify(&pattern) {
            VerifyOutcome::Verified => verified += 1,
            VerifyOutcome::BudgetExceeded => skipped += 1,
            VerifyOutcome::Counterexample(cx) => {
                println!("counterexample found!\n{}", render_position(&cx));
                std::process::exit(3);
            }
        }
    }
    println!("verified {verified} patterns exhaustively ({skipped} over budget)");
    println!("every completion of every zone is a win for {}", goal.or_player);
}
