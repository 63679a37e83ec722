//! Static life: which stones are safe without ever answering a threat?
//!
//! A set of blocks is statically safe when every block has at least two
//! "vital" enclosed regions — empty regions whose every empty point
//! touches the block. Such blocks cannot be captured even if the owner
//! passes forever; the search uses this as its terminal test.
//!
//! Each verdict is cross-checked here against a brute-force oracle that
//! lets the attacker move repeatedly while the defender always passes.
//!
//! Run with: `cargo run --example benson_analysis`

use rzt::{benson_safe_zone, capturable_when_passing, parse_position, render_position, Player};

fn main() {
    let boards = [
        (
            "separate one-point eyes: statically safe",
            "size: 5\nto_move: B\n.O.O.\nOOOOO\n.....\n.....\n.....\n",
        ),
        (
            "one eye plus open space: the open side is not an eye",
            "size: 5\nto_move: B\nOO.OO\nOOOOO\n.....\n.....\n.....\n",
        ),
        (
            "straight three: the attacker takes the middle",
            "size: 4\nto_move: B\nO...\nOOOO\n....\n....\n",
        ),
        (
            "stones outside the eyes are irrelevant to safety",
            "size: 5\nto_move: B\n.O.O.\nOOOOO\nXXXXX\n.....\n..X..\n",
        ),
    ];

    for (label, text) in boards {
        let p = parse_position(text).expect("board is legal");
        println!("{label}\n{}", render_position(&p));
        let (blocks, zone) = benson_safe_zone(&p, Player::White);
        if blocks.is_empty() {
            println!("statically safe blocks: none");
        } else {
            println!(
                "statically safe blocks: {} covering {}",
                blocks.len(),
                zone.coords().join(" ")
            );
        }

        // Oracle: a statically safe group must survive unlimited passing.
        let white = p.stones(Player::White);
        if !white.is_empty() {
            let capturable = capturable_when_passing(&p, &white);
            println!(
                "oracle: black capture while white passes forever: {}",
                if capturable { "possible" } else { "impossible" }
            );
            let safe_stones = zone.intersection(white);
            if !safe_stones.is_empty() {
                assert!(
                    !capturable_when_passing(&p, &safe_stones),
                    "statically safe stones must be uncapturable"
                );
            }
        }
        println!();
    }
}
